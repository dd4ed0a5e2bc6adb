#pragma once

#include <optional>
#include <vector>

#include "relasym/measure.hpp"
#include "relasym/modifier.hpp"

namespace relasym {

/// Distance from z to the segment [-1,1].
double cut_distance(cplx z);

/// Throws DomainError when z is within 1e-12 of [-1,1].
void require_off_cut(cplx z, const char* what);

/// sqrt(z^2-1) on the branch positive for z > 1, analytic off [-1,1].
cplx sqrt_z2m1(cplx z);

/// phi(z) = z + sqrt(z^2-1), the exterior conformal map, |phi| > 1.
cplx phi(cplx z);
cplx phi_prime(cplx z);

/// (1/pi) int t_nu(x) / ((z-x) sqrt(1-x^2)) dx with t_nu the Chebyshev T_nu.
cplx cheb_transform(int nu, cplx z);

struct AttractionFactor {
  cplx c;
  int e = 1;
};

/// prod_j ((phi(z)-phi(c_j))^2 / (2 phi(z) (z-c_j)))^{e_j}
cplx limit_sobolev(cplx z, const std::vector<AttractionFactor>& factors);

/// (1/2)^A prod (1 - 1/(phi(z) phi(d_j)))^{B_j} prod ((phi(z)-phi(c_i))/(z-c_i))^{A_i}
cplx limit_modified(cplx z, const RationalModifier& r);

/// lim kappa_n^2 / tau_n^2 = (-2)^{A-B} prod phi(d_j)^{B_j} / prod phi(c_i)^{A_i}
cplx kappa_tau_limit(const RationalModifier& r);

/// |((phi(z)-phi(c))/(2(z-c))) (1 - 1/(phi(z)phi(c))) - 1|
double factor_identity_check(cplx z, cplx c);

/// Bundles the limit data of one experiment.
struct LimitSpec {
  std::vector<AttractionFactor> sobolev_factors;
  std::optional<RationalModifier> modifier;
  std::vector<AttractionFactor> pade_factors;  // e = N_j + 1

  cplx evaluate(cplx z) const;
};

}  // namespace relasym
