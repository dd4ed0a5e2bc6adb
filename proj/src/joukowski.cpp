#include "relasym/joukowski.hpp"

#include <cmath>
#include <string>

namespace relasym {

namespace {

// (phi(z)-phi(c))/(z-c), continuous across z = c.
cplx phi_difference_quotient(cplx z, cplx c) {
  const cplx d = z - c;
  if (std::abs(d) > 1e-7 * std::max(1.0, std::abs(c))) return (phi(z) - phi(c)) / d;
  const cplx s = sqrt_z2m1(c);
  const cplx p1 = phi(c) / s;
  const cplx p2 = phi(c) / (s * s) - phi(c) * c / (s * s * s);
  return p1 + 0.5 * p2 * d;
}

}  // namespace

int RationalModifier::A() const {
  int s = 0;
  for (const auto& z : zeros) s += z.mult;
  return s;
}

int RationalModifier::B() const {
  int s = 0;
  for (const auto& p : poles) s += p.mult;
  return s;
}

void RationalModifier::validate(const BaseMeasureSpec& mu) const {
  std::vector<cplx> pts;
  auto check = [&](const RationalRoot& r, const char* what) {
    if (r.mult < 1) throw ConfigError(std::string(what) + " multiplicity must be positive");
    if (cut_distance(r.point) <= 1e-12) throw ConfigError(std::string(what) + " lies on [-1,1]");
    for (const auto& m : mu.mass_points)
      if (std::abs(r.point - m.location) <= 1e-12) throw ConfigError(std::string(what) + " sits on a mass point");
    for (cplx p : pts)
      if (std::abs(p - r.point) <= 1e-12)
        throw ConfigError("modifier points must be distinct (r in lowest terms)");
    pts.push_back(r.point);
  };
  for (const auto& z : zeros) check(z, "zero");
  for (const auto& p : poles) check(p, "pole");
}

cplx RationalModifier::numerator(cplx x) const {
  cplx v = 1.0;
  for (const auto& z : zeros) v *= std::pow(x - z.point, z.mult);
  return v;
}

cplx RationalModifier::denominator(cplx x) const {
  cplx v = 1.0;
  for (const auto& p : poles) v *= std::pow(x - p.point, p.mult);
  return v;
}

double cut_distance(cplx z) {
  const double x = z.real(), y = z.imag();
  const double dx = x > 1.0 ? x - 1.0 : (x < -1.0 ? -1.0 - x : 0.0);
  return std::hypot(dx, y);
}

void require_off_cut(cplx z, const char* what) {
  if (!(cut_distance(z) > 1e-12))
    throw DomainError(std::string(what) + ": point (" + std::to_string(z.real()) + ", " +
                      std::to_string(z.imag()) + ") lies on the cut [-1,1]");
}

cplx sqrt_z2m1(cplx z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

cplx phi(cplx z) {
  require_off_cut(z, "phi");
  return z + sqrt_z2m1(z);
}

cplx phi_prime(cplx z) { return phi(z) / sqrt_z2m1(z); }

cplx cheb_transform(int nu, cplx z) {
  if (nu < 0) throw ConfigError("cheb_transform: nu must be nonnegative");
  const cplx f = phi(z);
  return 1.0 / (std::pow(f, nu) * sqrt_z2m1(z));
}

cplx limit_sobolev(cplx z, const std::vector<AttractionFactor>& factors) {
  if (factors.empty()) return 1.0;
  const cplx fz = phi(z);
  cplx v = 1.0;
  for (const auto& f : factors) {
    require_off_cut(f.c, "limit_sobolev");
    const cplx q = phi_difference_quotient(z, f.c);
    v *= std::pow(q * q * (z - f.c) / (2.0 * fz), f.e);
  }
  return v;
}

cplx limit_modified(cplx z, const RationalModifier& r) {
  const cplx fz = phi(z);
  cplx v = std::pow(0.5, r.A());
  for (const auto& p : r.poles) v *= std::pow(1.0 - 1.0 / (fz * phi(p.point)), p.mult);
  for (const auto& c : r.zeros) v *= std::pow(phi_difference_quotient(z, c.point), c.mult);
  return v;
}

cplx kappa_tau_limit(const RationalModifier& r) {
  cplx v = std::pow(cplx(-2.0), r.A() - r.B());
  for (const auto& p : r.poles) v *= std::pow(phi(p.point), p.mult);
  for (const auto& c : r.zeros) v /= std::pow(phi(c.point), c.mult);
  return v;
}

double factor_identity_check(cplx z, cplx c) {
  const cplx lhs = 0.5 * phi_difference_quotient(z, c) * (1.0 - 1.0 / (phi(z) * phi(c)));
  return std::abs(lhs - 1.0);
}

cplx LimitSpec::evaluate(cplx z) const {
  cplx v = limit_sobolev(z, sobolev_factors) * limit_sobolev(z, pade_factors);
  if (modifier) v *= limit_modified(z, *modifier);
  return v;
}

}  // namespace relasym
