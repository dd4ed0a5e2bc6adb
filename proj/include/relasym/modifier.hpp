#pragma once

#include <vector>

#include "relasym/measure.hpp"

namespace relasym {

struct RationalRoot {
  cplx point;
  int mult = 1;
};

/// r = S/T with S = prod (x - c_i)^{A_i}, T = prod (x - d_j)^{B_j}.
struct RationalModifier {
  std::vector<RationalRoot> zeros;
  std::vector<RationalRoot> poles;

  int A() const;
  int B() const;
  bool trivial() const { return zeros.empty() && poles.empty(); }
  /// Throws ConfigError when zeros meet poles or a point lies on the support.
  void validate(const BaseMeasureSpec& mu) const;

  cplx numerator(cplx x) const;
  cplx denominator(cplx x) const;
  cplx operator()(cplx x) const { return numerator(x) / denominator(x); }
};

}  // namespace relasym
