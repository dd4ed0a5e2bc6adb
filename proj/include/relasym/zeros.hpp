#pragma once

#include <vector>

#include "relasym/measure.hpp"

namespace relasym {

struct ZeroReport {
  std::vector<cplx> roots;
  std::vector<cplx> centers;
  double radius = 0.0;
  double support_band = 0.0;
  std::vector<int> cluster_counts;  // per center
  int support_count = 0;
  std::vector<cplx> unassigned;
};

/// Roots of p from the comrade matrix of the recurrence basis, then Newton
/// polished. Throws NumericalError when a residual stays above 1e-7.
std::vector<cplx> roots(const PolyInBasis& p, const RecurrenceTable& base);

/// Relative Newton correction |p / p'| / max(1, |root|) at the root.
double root_residual(const PolyInBasis& p, const RecurrenceTable& base, cplx root);

/// 0.1 * min distance from a center to [-1,1] and to the other centers.
double default_cluster_radius(const std::vector<cplx>& centers);

ZeroReport cluster(const std::vector<cplx>& roots, const std::vector<cplx>& centers, double radius,
                   double support_band = 0.05);

}  // namespace relasym
