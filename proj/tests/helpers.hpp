#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "relasym/measure.hpp"

namespace th {

using relasym::cplx;

inline relasym::BaseMeasureSpec legendre() { return {}; }

inline relasym::BaseMeasureSpec chebyshev(std::vector<relasym::MassPoint> atoms = {}) {
  relasym::BaseMeasureSpec s;
  s.kind = relasym::WeightKind::chebyshev_first_kind;
  s.mass_points = std::move(atoms);
  return s;
}

inline relasym::BaseMeasureSpec jacobi_atom() {
  relasym::BaseMeasureSpec s;
  s.kind = relasym::WeightKind::jacobi;
  s.alpha = 0.5;
  s.beta = -0.3;
  s.mass_points = {{1.5, 0.3}};
  return s;
}

/// e_n over the chosen basis.
inline relasym::PolyInBasis unit(int n, relasym::Basis b) {
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = 1.0;
  return relasym::PolyInBasis(b, c);
}

/// max_k |a_k - b_k| / max_k |b_k| after converting both to the orthonormal basis.
inline double coeff_rel_diff(const relasym::PolyInBasis& a0, const relasym::PolyInBasis& b0,
                             const relasym::RecurrenceTable& t) {
  auto a = relasym::to_basis(a0, relasym::Basis::orthonormal_mu, t);
  auto b = relasym::to_basis(b0, relasym::Basis::orthonormal_mu, t);
  double num = 0.0, den = 0.0;
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k) {
    num = std::max(num, std::abs(a.coeff(k) - b.coeff(k)));
    den = std::max(den, std::abs(b.coeff(k)));
  }
  return num / den;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace th
