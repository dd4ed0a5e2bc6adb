#include "relasym/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace relasym {

namespace {

constexpr double kPi = std::numbers::pi;

struct RuleData {
  std::vector<double> nodes, weights;
};

double jacobi_mass(double al, double be) {
  return std::exp((al + be + 1.0) * std::log(2.0) + std::lgamma(al + 1.0) + std::lgamma(be + 1.0) -
                  std::lgamma(al + be + 2.0));
}

void check_degree(const RecurrenceTable& t, int n, const char* what) {
  if (n < 0 || n > t.nmax)
    throw ConfigError(std::string(what) + ": degree " + std::to_string(n) +
                      " exceeds recurrence table nmax " + std::to_string(t.nmax));
}

std::shared_ptr<const RuleData> continuous_rule(const BaseMeasureSpec& spec, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double, int>, std::shared_ptr<const RuleData>> cache;
  const double al = spec.jacobi_alpha(), be = spec.jacobi_beta();
  auto key = std::make_tuple(static_cast<int>(spec.kind), al, be, m);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto d = std::make_shared<RuleData>();
  d->nodes.resize(m);
  d->weights.resize(m);
  if (spec.kind == WeightKind::chebyshev_first_kind) {
    for (int k = 0; k < m; ++k) {
      d->nodes[k] = -std::cos((2.0 * k + 1.0) * kPi / (2.0 * m));
      d->weights[k] = kPi / m;
    }
  } else if (spec.kind == WeightKind::chebyshev_second_kind) {
    for (int k = 0; k < m; ++k) {
      double th = (k + 1.0) * kPi / (m + 1.0);
      d->nodes[k] = -std::cos(th);
      d->weights[k] = kPi / (m + 1.0) * std::sin(th) * std::sin(th);
    }
  } else {
    std::vector<double> a, b;
    jacobi_recurrence(al, be, m, a, b);
    std::vector<double> diag(b.begin(), b.begin() + m), off(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k) off[k - 1] = a[k];
    golub_welsch(diag, off, jacobi_mass(al, be), d->nodes, d->weights);
  }
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(key, d);
  return d;
}

// Rational Lanczos (RKPW) tridiagonalization of a discrete measure (x, w);
// fills a[1..nmax], b[0..nmax]. Stable where the plain Stieltjes sweep is not.
void lanczos(const std::vector<double>& x, const std::vector<double>& w, int nmax, std::vector<double>& a,
             std::vector<double>& b) {
  const int M = static_cast<int>(x.size());
  std::vector<double> p0 = x, p1(M, 0.0);
  p1[0] = w[0];
  for (int n = 0; n < M - 1; ++n) {
    double pn = w[n + 1], gam = 1.0, sig = 0.0, t = 0.0;
    const double lam = x[n + 1];
    for (int k = 0; k <= n + 1; ++k) {
      const double rho = p1[k] + pn;
      const double tmp = gam * rho;
      double tsig = sig;
      if (rho <= 0.0) {
        gam = 1.0;
        sig = 0.0;
      } else {
        gam = p1[k] / rho;
        sig = pn / rho;
      }
      const double tk = sig * (p0[k] - lam) - gam * t;
      p0[k] -= tk - t;
      t = tk;
      pn = sig <= 0.0 ? tsig * p1[k] : t * t / sig;
      p1[k] = tmp;
    }
  }
  a.assign(nmax + 1, 0.0);
  b.assign(nmax + 1, 0.0);
  for (int k = 0; k <= nmax; ++k) {
    b[k] = p0[k];
    if (k > 0) a[k] = std::sqrt(p1[k]);
  }
}

}  // namespace

std::string to_string(WeightKind k) {
  switch (k) {
    case WeightKind::chebyshev_first_kind: return "chebyshev_first_kind";
    case WeightKind::chebyshev_second_kind: return "chebyshev_second_kind";
    case WeightKind::legendre: return "legendre";
    case WeightKind::jacobi: return "jacobi";
  }
  return "unknown";
}

WeightKind weight_kind_from_string(const std::string& s) {
  if (s == "chebyshev_first_kind" || s == "chebyshev") return WeightKind::chebyshev_first_kind;
  if (s == "chebyshev_second_kind") return WeightKind::chebyshev_second_kind;
  if (s == "legendre") return WeightKind::legendre;
  if (s == "jacobi") return WeightKind::jacobi;
  throw ConfigError("unknown weight kind '" + s + "'");
}

double BaseMeasureSpec::jacobi_alpha() const {
  switch (kind) {
    case WeightKind::chebyshev_first_kind: return -0.5;
    case WeightKind::chebyshev_second_kind: return 0.5;
    case WeightKind::legendre: return 0.0;
    case WeightKind::jacobi: return alpha;
  }
  return 0.0;
}

double BaseMeasureSpec::jacobi_beta() const {
  switch (kind) {
    case WeightKind::chebyshev_first_kind: return -0.5;
    case WeightKind::chebyshev_second_kind: return 0.5;
    case WeightKind::legendre: return 0.0;
    case WeightKind::jacobi: return beta;
  }
  return 0.0;
}

void BaseMeasureSpec::validate() const {
  if (kind == WeightKind::jacobi && !(alpha > -1.0 && beta > -1.0))
    throw ConfigError("jacobi exponents must exceed -1");
  for (const auto& p : mass_points) {
    if (!std::isfinite(p.location) || std::abs(p.location) <= 1.0)
      throw ConfigError("mass point at " + std::to_string(p.location) + " is not outside [-1,1]");
    if (!std::isfinite(p.mass) || p.mass <= 0.0) throw ConfigError("mass point masses must be positive");
  }
}

double BaseMeasureSpec::continuous_mass() const { return jacobi_mass(jacobi_alpha(), jacobi_beta()); }

double BaseMeasureSpec::total_mass() const {
  double m = continuous_mass();
  for (const auto& p : mass_points) m += p.mass;
  return m;
}

double BaseMeasureSpec::weight(double x) const {
  return std::pow(1.0 - x, jacobi_alpha()) * std::pow(1.0 + x, jacobi_beta());
}

bool BaseMeasureSpec::same_as(const BaseMeasureSpec& o) const {
  if (jacobi_alpha() != o.jacobi_alpha() || jacobi_beta() != o.jacobi_beta()) return false;
  if (mass_points.size() != o.mass_points.size()) return false;
  for (size_t i = 0; i < mass_points.size(); ++i)
    if (mass_points[i].location != o.mass_points[i].location || mass_points[i].mass != o.mass_points[i].mass)
      return false;
  return true;
}

std::vector<double> QuadratureRule::abscissae() const {
  std::vector<double> x = nodes;
  for (const auto& p : atoms) x.push_back(p.location);
  return x;
}

std::vector<double> QuadratureRule::all_weights() const {
  std::vector<double> w = weights;
  for (const auto& p : atoms) w.push_back(p.mass);
  return w;
}

PolyInBasis::PolyInBasis(Basis basis, std::vector<cplx> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

void jacobi_recurrence(double al, double be, int n, std::vector<double>& a, std::vector<double>& b) {
  a.assign(n + 1, 0.0);
  b.assign(n + 1, 0.0);
  const double s = al + be;
  b[0] = (be - al) / (s + 2.0);
  for (int k = 1; k <= n; ++k) {
    const double t = 2.0 * k + s;
    b[k] = (be * be - al * al) / (t * (t + 2.0));
    double a2;
    if (k == 1)
      a2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    else
      a2 = 4.0 * k * (k + al) * (k + be) * (k + s) / (t * t * (t + 1.0) * (t - 1.0));
    a[k] = std::sqrt(a2);
  }
}

void golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag, double mass,
                  std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> d = diag, e(n, 0.0), z(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = offdiag[i];
  if (n > 0) z[0] = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0, m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw NumericalError("tridiagonal eigen-solver failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i], bb = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * bb;
          d[i + 1] = g + (p = s * r);
          g = c * r - bb;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int p, int q) { return d[p] < d[q]; });
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = d[idx[i]];
    weights[i] = mass * z[idx[i]] * z[idx[i]];
  }
}

RecurrenceTable recurrence_for(const BaseMeasureSpec& spec, int nmax) {
  spec.validate();
  if (nmax < 1) throw ConfigError("nmax must be at least 1");
  RecurrenceTable t;
  t.spec = spec;
  t.nmax = nmax;
  if (spec.pure()) {
    jacobi_recurrence(spec.jacobi_alpha(), spec.jacobi_beta(), nmax, t.a, t.b);
  } else {
    const int M0 = std::max(2 * nmax, 100);
    auto discrete = [&](int M, std::vector<double>& a, std::vector<double>& b) {
      QuadratureRule r = gauss_rule(spec, M);
      lanczos(r.abscissae(), r.all_weights(), nmax, a, b);
    };
    std::vector<double> a0, b0, a1, b1;
    discrete(M0, a0, b0);
    int M = M0;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      M *= 2;
      discrete(M, a1, b1);
      double diff = 0.0;
      for (int k = 0; k <= nmax; ++k) {
        diff = std::max(diff, std::abs(b1[k] - b0[k]));
        if (k > 0) diff = std::max(diff, std::abs(a1[k] - a0[k]));
      }
      ok = diff < 1e-12;
      a0.swap(a1);
      b0.swap(b1);
    }
    if (!ok) throw NonConvergence("discretized Lanczos procedure did not converge under doubling");
    t.a = a0;
    t.b = b0;
  }
  t.tau.assign(nmax + 1, 0.0);
  t.tau[0] = 1.0 / std::sqrt(spec.total_mass());
  for (int k = 0; k < nmax; ++k) t.tau[k + 1] = t.tau[k] / t.a[k + 1];
  return t;
}

QuadratureRule gauss_rule(const BaseMeasureSpec& spec, int m) {
  if (m < 1) throw ConfigError("quadrature rule needs at least one node");
  auto d = continuous_rule(spec, m);
  QuadratureRule r;
  r.nodes = d->nodes;
  r.weights = d->weights;
  r.atoms = spec.mass_points;
  return r;
}

QuadratureRule gauss_rule(const RecurrenceTable& table, int m) {
  if (m > table.nmax) throw ConfigError("gauss_rule: m exceeds table nmax");
  return gauss_rule(table.spec, m);
}

std::vector<std::vector<cplx>> orthonormal_jets(const RecurrenceTable& t, int n, cplx z, int order) {
  check_degree(t, n, "eval_jet");
  std::vector<std::vector<cplx>> J(n + 1, std::vector<cplx>(order + 1, 0.0));
  J[0][0] = t.tau[0];
  for (int k = 0; k < n; ++k) {
    const double ak = k > 0 ? t.a[k] : 0.0;
    const double inv = 1.0 / t.a[k + 1];
    for (int j = 0; j <= order; ++j) {
      cplx v = (z - t.b[k]) * J[k][j];
      if (j > 0) v += static_cast<double>(j) * J[k][j - 1];
      if (k > 0) v -= ak * J[k - 1][j];
      J[k + 1][j] = v * inv;
    }
  }
  return J;
}

std::vector<std::vector<std::complex<long double>>> orthonormal_jets_ext(const RecurrenceTable& t, int n,
                                                                         cplx z, int order) {
  using C = std::complex<long double>;
  check_degree(t, n, "eval_jet");
  std::vector<std::vector<C>> J(n + 1, std::vector<C>(order + 1, C(0.0L)));
  const C zz(z.real(), z.imag());
  J[0][0] = static_cast<long double>(t.tau[0]);
  for (int k = 0; k < n; ++k) {
    const long double ak = k > 0 ? t.a[k] : 0.0L;
    const long double inv = 1.0L / static_cast<long double>(t.a[k + 1]);
    for (int j = 0; j <= order; ++j) {
      C v = (zz - static_cast<long double>(t.b[k])) * J[k][j];
      if (j > 0) v += static_cast<long double>(j) * J[k][j - 1];
      if (k > 0) v -= ak * J[k - 1][j];
      J[k + 1][j] = v * inv;
    }
  }
  return J;
}

std::vector<cplx> eval_jet(const RecurrenceTable& t, int n, cplx z, int order, Basis basis) {
  check_degree(t, n, "eval_jet");
  if (order < 0) throw ConfigError("eval_jet: negative order");
  if (basis == Basis::orthonormal_mu) return orthonormal_jets(t, n, z, order)[n];
  // monic recurrence L_{k+1} = (z - b_k) L_k - a_k^2 L_{k-1}
  std::vector<cplx> prev(order + 1, 0.0), cur(order + 1, 0.0), next(order + 1);
  cur[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    const double a2 = k > 0 ? t.a[k] * t.a[k] : 0.0;
    for (int j = 0; j <= order; ++j) {
      cplx v = (z - t.b[k]) * cur[j] - a2 * prev[j];
      if (j > 0) v += static_cast<double>(j) * cur[j - 1];
      next[j] = v;
    }
    prev.swap(cur);
    cur.swap(next);
  }
  return cur;
}

PolyInBasis to_basis(const PolyInBasis& p, Basis target, const RecurrenceTable& t) {
  if (p.basis() == target || p.is_zero()) return PolyInBasis(target, p.coeffs());
  check_degree(t, p.degree(), "to_basis");
  std::vector<cplx> c = p.coeffs();
  for (size_t k = 0; k < c.size(); ++k) {
    if (target == Basis::orthonormal_mu)
      c[k] /= t.tau[k];
    else
      c[k] *= t.tau[k];
  }
  return PolyInBasis(target, std::move(c));
}

std::vector<cplx> eval_poly(const PolyInBasis& p, const RecurrenceTable& t, cplx z, int order) {
  std::vector<cplx> out(order + 1, 0.0);
  if (p.is_zero()) return out;
  PolyInBasis q = to_basis(p, Basis::orthonormal_mu, t);
  auto J = orthonormal_jets(t, q.degree(), z, order);
  for (int j = 0; j <= order; ++j) {
    CompensatedSum<cplx> s;
    for (int k = 0; k <= q.degree(); ++k) s.add(q.coeffs()[k] * J[k][j]);
    out[j] = s.value();
  }
  return out;
}

double eval_abs_scale(const PolyInBasis& p, const RecurrenceTable& t, cplx z, int order) {
  if (p.is_zero()) return 0.0;
  PolyInBasis q = to_basis(p, Basis::orthonormal_mu, t);
  auto J = orthonormal_jets(t, q.degree(), z, order);
  double s = 0.0;
  for (int k = 0; k <= q.degree(); ++k) s += std::abs(q.coeffs()[k]) * std::abs(J[k][order]);
  return s;
}

PolyInBasis times_x(const PolyInBasis& p, const RecurrenceTable& t) {
  if (p.is_zero()) return p;
  PolyInBasis q = to_basis(p, Basis::orthonormal_mu, t);
  const int d = q.degree();
  check_degree(t, d + 1, "times_x");
  std::vector<cplx> out(d + 2, 0.0);
  for (int m = 0; m <= d; ++m) {
    const cplx c = q.coeffs()[m];
    out[m + 1] += t.a[m + 1] * c;
    out[m] += t.b[m] * c;
    if (m > 0) out[m - 1] += t.a[m] * c;
  }
  return PolyInBasis(Basis::orthonormal_mu, std::move(out));
}

PolyInBasis monomial(const RecurrenceTable& t, int k) {
  PolyInBasis p(Basis::orthonormal_mu, {cplx(1.0 / t.tau[0])});
  for (int i = 0; i < k; ++i) p = times_x(p, t);
  return p;
}

cplx inner_mu(const PolyInBasis& p, const PolyInBasis& q, const QuadratureRule& rule, const RecurrenceTable& t) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  if (p.degree() + q.degree() > rule.exact_degree())
    throw ConfigError("inner_mu: insufficient rule order for degree " + std::to_string(p.degree() + q.degree()));
  NodalBasis nb(t, rule, std::max(p.degree(), q.degree()));
  auto vp = nb.values(to_basis(p, Basis::orthonormal_mu, t)), vq = nb.values(to_basis(q, Basis::orthonormal_mu, t));
  std::vector<cplx> prod(vp.size());
  for (size_t i = 0; i < vp.size(); ++i) prod[i] = vp[i] * vq[i];
  return nb.integrate(prod);
}

namespace {

// l_0..l_K at a mass point. There l_k is the minimal solution of the
// recurrence (it decays like |phi(x)|^-k), so forward recursion is unstable;
// Miller's backward recursion from N > K, normalized by l_0, is not. Beyond
// the table the limiting coefficients a = 1/2, b = 0 are used; their error is
// damped by |phi(x)|^-2 per step and only affects the already tiny tail.
void atom_values(const RecurrenceTable& t, double x, int K, double* v) {
  const double ax = std::abs(x);
  const double rho = ax + std::sqrt(ax * ax - 1.0);
  const int extra = static_cast<int>(std::ceil(40.0 / std::log(rho))) + 10;
  const int N = K + std::min(extra, 4000);
  auto a = [&](int k) { return k <= t.nmax ? t.a[k] : 0.5; };
  auto b = [&](int k) { return k <= t.nmax ? t.b[k] : 0.0; };
  double up = 0.0, u = 1e-200;
  for (int k = N; k >= 1; --k) {
    // l_{k-1} = ((x - b_k) l_k - a_{k+1} l_{k+1}) / a_k
    double down = ((x - b(k)) * u - a(k + 1) * up) / a(k);
    up = u;
    u = down;
    if (k - 1 <= K) v[k - 1] = u;
    if (k <= K) v[k] = up;
    if (std::abs(u) > 1e200) {
      up *= 1e-200;
      u *= 1e-200;
      for (int j = k - 1; j <= K; ++j) v[j] *= 1e-200;
    }
  }
  const double s = t.tau[0] / u;
  for (int j = 0; j <= K; ++j) v[j] *= s;
}

}  // namespace

NodalBasis::NodalBasis(const RecurrenceTable& t, const QuadratureRule& rule, int K) : K_(K) {
  check_degree(t, K, "NodalBasis");
  x_ = rule.abscissae();
  w_ = rule.all_weights();
  vals_.assign(x_.size() * (K + 1), 0.0);
  for (size_t i = 0; i < x_.size(); ++i) {
    double* v = &vals_[i * (K + 1)];
    if (i >= rule.nodes.size() && std::abs(x_[i]) > 1.0) {
      atom_values(t, x_[i], K, v);
      continue;
    }
    v[0] = t.tau[0];
    for (int k = 0; k < K; ++k) {
      double nv = (x_[i] - t.b[k]) * v[k];
      if (k > 0) nv -= t.a[k] * v[k - 1];
      v[k + 1] = nv / t.a[k + 1];
    }
  }
}

std::vector<cplx> NodalBasis::values(const PolyInBasis& p) const {
  std::vector<cplx> out(x_.size(), 0.0);
  if (p.is_zero()) return out;
  if (p.basis() != Basis::orthonormal_mu) throw ConfigError("NodalBasis::values expects orthonormal coefficients");
  if (p.degree() > K_) throw ConfigError("NodalBasis::values: degree exceeds basis size");
  for (size_t i = 0; i < x_.size(); ++i) {
    CompensatedSum<cplx> s;
    for (int k = 0; k <= p.degree(); ++k) s.add(p.coeffs()[k] * l(static_cast<int>(i), k));
    out[i] = s.value();
  }
  return out;
}

std::vector<cplx> NodalBasis::project(const std::vector<cplx>& vals, int deg) const {
  if (deg > K_) throw ConfigError("NodalBasis::project: degree exceeds basis size");
  std::vector<cplx> c(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    CompensatedSum<cplx> s;
    for (size_t i = 0; i < x_.size(); ++i) s.add(w_[i] * vals[i] * l(static_cast<int>(i), k));
    c[k] = s.value();
  }
  return c;
}

cplx NodalBasis::integrate(const std::vector<cplx>& vals) const {
  CompensatedSum<cplx> s;
  for (size_t i = 0; i < x_.size(); ++i) s.add(w_[i] * vals[i]);
  return s.value();
}

}  // namespace relasym
