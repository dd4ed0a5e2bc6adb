#include "relasym/pade.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace relasym {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace

void StieltjesFn::validate() const {
  base.validate();
  for (size_t j = 0; j < poles.size(); ++j) {
    const auto& p = poles[j];
    if (p.A.empty() || p.A.back() == cplx(0.0)) throw ConfigError("pole coefficients must end with a nonzero A_{j,N_j}");
    if (cut_distance(p.c) <= 1e-12) throw ConfigError("pole lies on [-1,1]");
    for (const auto& m : base.mass_points)
      if (std::abs(p.c - m.location) <= 1e-12) throw ConfigError("pole sits on a mass point");
    for (size_t k = 0; k < j; ++k)
      if (std::abs(poles[k].c - p.c) <= 1e-12) throw ConfigError("poles must be distinct");
  }
}

SobolevSpec StieltjesFn::to_sobolev() const {
  std::vector<cplx> pts;
  std::vector<std::vector<cplx>> A;
  for (const auto& p : poles) {
    pts.push_back(p.c);
    A.push_back(p.A);
  }
  return SobolevSpec::pade_form(pts, A);
}

std::vector<AttractionFactor> StieltjesFn::attraction() const {
  std::vector<AttractionFactor> f;
  for (const auto& p : poles) f.push_back({p.c, p.N() + 1});
  return f;
}

cplx evaluate_f(const StieltjesFn& f, cplx z) {
  require_off_cut(z, "evaluate_f");
  cplx poles = 0.0;
  for (const auto& p : f.poles) {
    if (std::abs(z - p.c) <= 1e-12) throw DomainError("evaluate_f: z coincides with a pole");
    for (int i = 0; i <= p.N(); ++i) poles += p.A[i] * factorial(i) / std::pow(z - p.c, i + 1);
  }
  double scale = 0.0;
  auto cauchy = [&](int M) {
    QuadratureRule r = gauss_rule(f.base, M);
    CompensatedSum<cplx> s;
    scale = 0.0;
    for (int i = 0; i < r.size(); ++i) {
      s.add(r.weights[i] / (z - r.nodes[i]));
      scale += std::abs(r.weights[i] / (z - r.nodes[i]));
    }
    for (const auto& a : r.atoms) s.add(a.mass / (z - a.location));
    return s.value();
  };
  int M = 64;
  cplx v = cauchy(M);
  for (int attempt = 0; attempt < 8; ++attempt) {
    M *= 2;
    cplx v2 = cauchy(M);
    if (std::abs(v2 - v) <= 1e-14 * scale) return v2 + poles;
    v = v2;
  }
  throw NonConvergence("evaluate_f: Cauchy integral did not converge");
}

PadeSolver::PadeSolver(StieltjesFn f, const RecurrenceTable& base)
    : f_((f.validate(), std::move(f))), lam_(f_.to_sobolev(), base) {
  if (!f_.base.same_as(base.spec)) throw ConfigError("PadeSolver: recurrence table belongs to another measure");
}

SobolevOP PadeSolver::denominator_op(int n) const { return lam_.solve(n); }

PolyInBasis PadeSolver::numerator(int n, const PolyInBasis& Q0) const {
  const RecurrenceTable& t = base();
  PolyInBasis Q = to_basis(Q0, Basis::orthonormal_mu, t);
  if (Q.degree() != n) throw ConfigError("pade numerator: denominator degree mismatch");
  if (n < 1) return PolyInBasis(Basis::orthonormal_mu, {});
  NodalBasis nb(t, gauss_rule(t.spec, n + 50), n);
  auto qv = nb.values(Q);
  const double mass = t.spec.total_mass();
  std::vector<cplx> pv(nb.rows());
  for (int r = 0; r < nb.rows(); ++r) {
    const double y = nb.x()[r];
    // second-kind polynomials: same recurrence, q_0 = 0, q_1 = tau_1 * mass
    double prev = 0.0, cur = t.tau[1] * mass;
    CompensatedSum<cplx> s;
    s.add(Q.coeff(1) * cur);
    for (int k = 1; k < n; ++k) {
      const double nxt = ((y - t.b[k]) * cur - t.a[k] * prev) / t.a[k + 1];
      prev = cur;
      cur = nxt;
      s.add(Q.coeff(k + 1) * cur);
    }
    pv[r] = s.value();
  }
  for (const auto& p : f_.poles) {
    auto qj = eval_poly(Q, t, p.c, p.N());
    for (int r = 0; r < nb.rows(); ++r) {
      const cplx d = nb.x()[r] - p.c;
      cplx taylor = 0.0, dpow = 1.0;
      for (int i = 0; i <= p.N(); ++i) {
        taylor += qj[i] / factorial(i) * dpow;
        dpow *= d;
        pv[r] += p.A[i] * factorial(i) * (qv[r] - taylor) / dpow;
      }
    }
  }
  return PolyInBasis(Basis::orthonormal_mu, nb.project(pv, n - 1));
}

PadeApproximant PadeSolver::approximant(int n) const {
  PadeApproximant pa;
  pa.n = n;
  pa.Q = denominator(n);
  pa.P = numerator(n, pa.Q);
  return pa;
}

cplx PadeSolver::error(int n, cplx z) const { return error(denominator_op(n), z); }

cplx PadeSolver::error(const SobolevOP& op, cplx z) const {
  require_off_cut(z, "pade error");
  const RecurrenceTable& t = base();
  const int n = op.n;
  const RationalModifier s = f_.to_sobolev().s_modifier();
  const int A = s.A();
  CompensatedSum<cplx> sum;
  for (int k = 0; k <= A; ++k) {
    const ModifiedOP& Q = lam_.family().get(n - k);
    NodalBasis nb(t, gauss_rule(t.spec, Q.n + A + 100), Q.n);
    auto qv = nb.values(Q.q);
    CompensatedSum<cplx> g;
    for (int i = 0; i < nb.rows(); ++i) g.add(nb.w()[i] * qv[i] * qv[i] * s.numerator(nb.x()[i]) / (z - nb.x()[i]));
    sum.add(op.lambda[k] * g.value() / eval_poly(Q.q, t, z, 0)[0]);
  }
  return sum.value() / (s.numerator(z) * eval_poly(op.rep, t, z, 0)[0]);
}

cplx PadeSolver::error_direct(int n, cplx z) const {
  PadeApproximant pa = approximant(n);
  const RecurrenceTable& t = base();
  return evaluate_f(f_, z) - eval_poly(pa.P, t, z, 0)[0] / eval_poly(pa.Q, t, z, 0)[0];
}

ErrorRatio PadeSolver::error_ratio(int n, cplx z) const {
  for (const auto& p : f_.poles)
    if (std::abs(z - p.c) <= 1e-12) throw DomainError("error_ratio: z coincides with a pole");
  ErrorRatio er;
  er.e_n = error(n, z);
  er.e_n1 = error(n + 1, z);
  er.saturated = !(std::abs(er.e_n) > 1e-290) || !(std::abs(er.e_n1) > 1e-300) || !std::isfinite(std::abs(er.e_n));
  er.ratio = er.saturated ? cplx(std::numeric_limits<double>::quiet_NaN(), 0.0) : er.e_n1 / er.e_n;
  return er;
}

PolyInBasis pade_denominator(int n, const StieltjesFn& f, const RecurrenceTable& base) {
  return PadeSolver(f, base).denominator(n);
}

PolyInBasis pade_numerator(int n, const StieltjesFn& f, const PolyInBasis& Q, const RecurrenceTable& base) {
  return PadeSolver(f, base).numerator(n, Q);
}

ErrorRatio error_ratio(int n, cplx z, const StieltjesFn& f, const RecurrenceTable& base) {
  return PadeSolver(f, base).error_ratio(n, z);
}

double pade_orthogonality_residual(const PolyInBasis& Q0, const StieltjesFn& f, const RecurrenceTable& t) {
  PolyInBasis Q = to_basis(Q0, Basis::orthonormal_mu, t);
  const int n = Q.degree();
  NodalBasis nb(t, gauss_rule(t.spec, n + 2), n);
  auto qv = nb.values(Q);
  struct PoleData {
    std::vector<std::vector<cplx>> lj;  // l_k^{(d)}(c)
    std::vector<cplx> qj;
    std::vector<double> qabs;
  };
  std::vector<PoleData> pd;
  for (const auto& p : f.poles) {
    PoleData d;
    d.lj = orthonormal_jets(t, n, p.c, p.N());
    d.qj = eval_poly(Q, t, p.c, p.N());
    for (int i = 0; i <= p.N(); ++i) d.qabs.push_back(eval_abs_scale(Q, t, p.c, i));
    pd.push_back(d);
  }
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    CompensatedSum<cplx> val;
    double scale = 0.0;
    for (int i = 0; i < nb.rows(); ++i) {
      const cplx v = nb.w()[i] * nb.l(i, k) * qv[i];
      val.add(v);
      scale += std::abs(v);
    }
    for (size_t j = 0; j < f.poles.size(); ++j) {
      const auto& p = f.poles[j];
      for (int i = 0; i <= p.N(); ++i)
        for (int s = 0; s <= i; ++s) {
          const cplx term = p.A[i] * binom(i, s) * pd[j].lj[k][s];
          val.add(term * pd[j].qj[i - s]);
          scale += std::abs(term) * pd[j].qabs[i - s];
        }
    }
    worst = std::max(worst, std::abs(val.value()) / scale);
  }
  return worst;
}

std::vector<cplx> stieltjes_moments(const StieltjesFn& f, const RecurrenceTable& base, int count) {
  QuadratureRule r = gauss_rule(base.spec, count / 2 + 2);
  std::vector<cplx> m(count, 0.0);
  for (int k = 0; k < count; ++k) {
    CompensatedSum<double> s;
    for (int i = 0; i < r.size(); ++i) s.add(r.weights[i] * std::pow(r.nodes[i], k));
    for (const auto& a : r.atoms) s.add(a.mass * std::pow(a.location, k));
    m[k] = s.value();
    for (const auto& p : f.poles)
      for (int i = 0; i <= std::min(k, p.N()); ++i)
        m[k] += p.A[i] * factorial(i) * binom(k, i) * std::pow(p.c, k - i);
  }
  return m;
}

std::vector<cplx> laurent_coefficients(const PolyInBasis& P0, const PolyInBasis& Q0, const RecurrenceTable& t,
                                       int count) {
  using C = std::complex<long double>;
  auto monomial_coeffs = [&](const PolyInBasis& p0) {
    PolyInBasis p = to_basis(p0, Basis::orthonormal_mu, t);
    const int d = std::max(p.degree(), 0);
    std::vector<C> out(d + 1, C(0.0L));
    std::vector<long double> prev, cur{static_cast<long double>(t.tau[0])};
    for (int k = 0; k <= p.degree(); ++k) {
      for (size_t i = 0; i < cur.size(); ++i)
        out[i] += C(p.coeff(k).real(), p.coeff(k).imag()) * cur[i];
      std::vector<long double> nxt(cur.size() + 1, 0.0L);
      for (size_t i = 0; i < cur.size(); ++i) {
        nxt[i + 1] += cur[i];
        nxt[i] -= static_cast<long double>(t.b[k]) * cur[i];
      }
      if (k > 0)
        for (size_t i = 0; i < prev.size(); ++i) nxt[i] -= static_cast<long double>(t.a[k]) * prev[i];
      if (k + 1 <= t.nmax)
        for (auto& v : nxt) v /= static_cast<long double>(t.a[k + 1]);
      prev.swap(cur);
      cur.swap(nxt);
    }
    return out;
  };
  auto pc = monomial_coeffs(P0), qc = monomial_coeffs(Q0);
  const int n = static_cast<int>(qc.size()) - 1;
  // series in w = 1/z: numerator sum p_{n-1-i} w^i, denominator sum q_{n-i} w^i
  std::vector<C> num(count, C(0.0L)), den(count, C(0.0L)), e(count, C(0.0L));
  for (int i = 0; i < count; ++i) {
    const int pi = n - 1 - i, qi = n - i;
    if (pi >= 0 && pi < static_cast<int>(pc.size())) num[i] = pc[pi];
    if (qi >= 0) den[i] = qc[qi];
  }
  for (int k = 0; k < count; ++k) {
    C v = num[k];
    for (int r = 0; r < k; ++r) v -= e[r] * den[k - r];
    e[k] = v / den[0];
  }
  std::vector<cplx> out(count);
  for (int k = 0; k < count; ++k) out[k] = cplx(static_cast<double>(e[k].real()), static_cast<double>(e[k].imag()));
  return out;
}

RootLawSample nth_root_law(const PadeSolver& solver, int n, cplx center, double radius, int samples) {
  RootLawSample s;
  s.n = n;
  double emax = 0.0, phimin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / samples;
    const cplx z = center + radius * cplx(std::cos(th), std::sin(th));
    emax = std::max(emax, std::abs(solver.error(n, z)));
    phimin = std::min(phimin, std::abs(phi(z)));
  }
  s.root_error = std::pow(emax, 1.0 / (2.0 * n));
  s.target = 1.0 / phimin;
  return s;
}

}  // namespace relasym
