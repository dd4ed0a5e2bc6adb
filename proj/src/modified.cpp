#include "relasym/modified.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "relasym/joukowski.hpp"
#include "relasym/linalg.hpp"

namespace relasym {

namespace {

// Orthonormal coefficients mu_k of l_{top-k}, mu_0 = 1, for a given pole-row rule.
std::vector<cplx> solve_lambda_orthonormal(int n, const RationalModifier& r, const RecurrenceTable& base, int M,
                                           double& cond) {
  const int A = r.A(), B = r.B(), U = A + B, top = n + A;
  Eigen::MatrixXcd sys(U, U + 1);
  int row = 0;
  for (const auto& z : r.zeros) {
    auto J = orthonormal_jets(base, top, z.point, z.mult - 1);
    for (int nu = 0; nu < z.mult; ++nu, ++row)
      for (int k = 0; k <= U; ++k) sys(row, k) = J[top - k][nu];
  }
  if (B > 0) {
    NodalBasis nb(base, gauss_rule(base.spec, M), top);
    const int low = n - B;
    for (const auto& d : r.poles) {
      for (int nu = 1; nu <= d.mult; ++nu, ++row) {
        std::vector<CompensatedSum<cplx>> acc(U + 1);
        for (int i = 0; i < nb.rows(); ++i) {
          const cplx g = nb.w()[i] * nb.l(i, low) / std::pow(nb.x()[i] - d.point, nu);
          for (int k = 0; k <= U; ++k) acc[k].add(g * nb.l(i, top - k));
        }
        for (int k = 0; k <= U; ++k) sys(row, k) = acc[k].value();
      }
    }
  }
  Eigen::VectorXcd rhs = -sys.col(0);
  Eigen::MatrixXcd mat = sys.rightCols(U);
  Eigen::VectorXcd sol = solve_equilibrated(mat, rhs, cond);
  std::vector<cplx> mu(U + 1);
  mu[0] = 1.0;
  for (int k = 0; k < U; ++k) mu[k + 1] = sol(k);
  return mu;
}

}  // namespace

ModifiedOP solve_Q(int n, const RationalModifier& r, const RecurrenceTable& base) {
  r.validate(base.spec);
  const int A = r.A(), B = r.B(), U = A + B, top = n + A;
  if (n < U + 1) throw ConfigError("solve_Q: n must be at least A+B+1");
  if (top > base.nmax) throw ConfigError("solve_Q: recurrence table too short for degree " + std::to_string(top));
  const int M = n + A + B + 50;

  ModifiedOP op;
  op.n = n;
  std::vector<cplx> mu{1.0};
  if (U > 0) {
    mu = solve_lambda_orthonormal(n, r, base, M, op.cond);
    if (B > 0) {
      bool ok = false;
      int Mk = M;
      for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
        Mk *= 2;
        double c2 = 0.0;
        auto mu2 = solve_lambda_orthonormal(n, r, base, Mk, c2);
        double diff = 0.0, size = 1.0;
        for (int k = 0; k <= U; ++k) {
          diff = std::max(diff, std::abs(mu2[k] - mu[k]));
          size = std::max(size, std::abs(mu2[k]));
        }
        ok = diff <= 1e-10 * size;
        mu = mu2;
        op.cond = c2;
      }
      if (!ok) throw NonConvergence("solve_Q: pole integrals did not converge under rule doubling");
    }
    if (!(op.cond < 1e10)) throw SingularSystem("solve_Q: pre-asymptotic index n=" + std::to_string(n), op.cond);
  }

  op.lambda.resize(U + 1);
  std::vector<cplx> monic(top + 1, 0.0);
  for (int k = 0; k <= U; ++k) {
    op.lambda[k] = mu[k] * base.tau[top - k] / base.tau[top];
    monic[top - k] = op.lambda[k];
  }
  op.rep = PolyInBasis(Basis::monic_mu, monic);

  QuadratureRule rule = gauss_rule(base.spec, M);
  NodalBasis nb(base, rule, top);
  std::vector<cplx> qv(nb.rows()), rv(nb.rows());
  for (int i = 0; i < nb.rows(); ++i) {
    CompensatedSum<cplx> s;
    for (int k = 0; k <= U; ++k) s.add(mu[k] * nb.l(i, top - k));
    const double x = nb.x()[i];
    qv[i] = s.value() / (base.tau[top] * r.numerator(x));
    rv[i] = r(x);
  }
  auto qc = nb.project(qv, n);
  double qmax = 0.0;
  for (auto c : qc) qmax = std::max(qmax, std::abs(c));
  if (!(std::abs(qc[n]) > 1e-8 * qmax))
    throw SingularSystem("solve_Q: degree of Q_n dropped at n=" + std::to_string(n), op.cond);
  op.q = PolyInBasis(Basis::orthonormal_mu, qc);

  CompensatedSum<cplx> k2, xm;
  for (int i = 0; i < nb.rows(); ++i) {
    const cplx v = nb.w()[i] * qv[i] * qv[i] * rv[i];
    k2.add(v);
    xm.add(v * nb.x()[i]);
  }
  op.kappa_sq_inv = k2.value();
  op.x_moment = xm.value();
  return op;
}

RecurrenceStep recurrence_extract(const ModifiedOP& prev, const ModifiedOP& cur, const ModifiedOP& next,
                                  const RecurrenceTable& base) {
  if (prev.n + 1 != cur.n || cur.n + 1 != next.n) throw ConfigError("recurrence_extract: indices must be consecutive");
  if (prev.kappa_sq_inv == cplx(0.0) || cur.kappa_sq_inv == cplx(0.0))
    throw NumericalError("recurrence_extract: degenerate index (kappa_n^2 undefined)");
  RecurrenceStep st;
  st.alpha_sq = cur.kappa_sq_inv / prev.kappa_sq_inv;
  st.beta = cur.beta();
  PolyInBasis xq = times_x(cur.q, base);
  const int d = next.n;
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= d; ++k) {
    const cplx v = next.q.coeff(k) - xq.coeff(k) + st.beta * cur.q.coeff(k) + st.alpha_sq * prev.q.coeff(k);
    num += std::norm(v);
    den += std::norm(next.q.coeff(k));
  }
  st.residual = std::sqrt(num / den);
  return st;
}

double orthogonality_residual(const ModifiedOP& op, const RationalModifier& r, const RecurrenceTable& base) {
  const int n = op.n;
  QuadratureRule rule = gauss_rule(base.spec, n + r.A() + r.B() + 50);
  NodalBasis nb(base, rule, n);
  auto qv = nb.values(op.q);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    CompensatedSum<cplx> s;
    double scale = 0.0;
    for (int i = 0; i < nb.rows(); ++i) {
      const cplx v = nb.w()[i] * nb.l(i, k) * qv[i] * r(nb.x()[i]);
      s.add(v);
      scale += std::abs(v);
    }
    worst = std::max(worst, std::abs(s.value()) / scale);
  }
  return worst;
}

ModifiedFamily::ModifiedFamily(RationalModifier r, RecurrenceTable base) : r_(std::move(r)), base_(std::move(base)) {
  r_.validate(base_.spec);
}

const ModifiedOP& ModifiedFamily::get(int n) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = ops_.find(n);
    if (it != ops_.end()) return *it->second;
  }
  auto op = std::make_shared<const ModifiedOP>(solve_Q(n, r_, base_));
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, inserted] = ops_.emplace(n, op);
  return *it->second;
}

cplx ModifiedFamily::alpha_sq(int n) const { return get(n).kappa_sq_inv / get(n - 1).kappa_sq_inv; }

std::vector<cplx> ModifiedFamily::kappa_chain(int n0, int n1) const {
  std::vector<cplx> k;
  k.push_back(std::sqrt(kappa_sq(n0)));
  for (int m = n0; m < n1; ++m) k.push_back(k.back() / std::sqrt(alpha_sq(m + 1)));
  return k;
}

cplx ModifiedFamily::kappa_pair(int n, int nu) const {
  cplx v = kappa_sq(n);
  for (int i = 1; i <= nu; ++i) v /= std::sqrt(alpha_sq(n + i));
  return v;
}

WeakLimitProbe weak_limit_probe(const PolyInBasis& f, int nu, int n, const ModifiedFamily& fam) {
  const int m = nu < 0 ? n + nu : n;
  const int d = std::abs(nu);
  if (m < fam.min_index()) throw ConfigError("weak_limit_probe: index below the solvable range");
  const RecurrenceTable& base = fam.base();
  const ModifiedOP& q1 = fam.get(m);
  const ModifiedOP& q2 = fam.get(m + d);
  const int deg = std::max(f.degree(), 0);
  QuadratureRule rule = gauss_rule(base.spec, m + d + deg + fam.modifier().A() + fam.modifier().B() + 50);
  NodalBasis nb(base, rule, std::max(m + d, deg));
  auto v1 = nb.values(q1.q), v2 = nb.values(q2.q), vf = nb.values(to_basis(f, Basis::orthonormal_mu, base));
  std::vector<cplx> prod(nb.rows());
  for (int i = 0; i < nb.rows(); ++i) prod[i] = vf[i] * v1[i] * v2[i] * fam.modifier()(nb.x()[i]);
  WeakLimitProbe out;
  out.lhs = fam.kappa_pair(m, d) * nb.integrate(prod);

  const int Mc = deg + d + 16;
  CompensatedSum<cplx> s;
  for (int k = 0; k < Mc; ++k) {
    const double th = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * Mc);
    const double x = std::cos(th);
    s.add(eval_poly(f, base, x, 0)[0] * std::cos(d * th));
  }
  out.rhs = s.value() / static_cast<double>(Mc);
  return out;
}

double bilinear_variation(int n, int nu, const ModifiedFamily& fam) {
  const RecurrenceTable& base = fam.base();
  const ModifiedOP& q1 = fam.get(n);
  const ModifiedOP& q2 = fam.get(n + nu);
  QuadratureRule rule = gauss_rule(base.spec, n + nu + 60);
  NodalBasis nb(base, rule, n + nu);
  auto v1 = nb.values(q1.q), v2 = nb.values(q2.q);
  double s = 0.0;
  for (int i = 0; i < nb.rows(); ++i) s += nb.w()[i] * std::abs(v1[i] * v2[i] * fam.modifier()(nb.x()[i]));
  return s * std::abs(fam.kappa_pair(n, nu));
}

cplx bilinear_pole_integral(int n, int k, int nu, cplx z, const RecurrenceTable& base) {
  if (n < 0 || n + k < 0) throw ConfigError("bilinear_pole_integral: negative degree");
  if (nu < 0) throw ConfigError("bilinear_pole_integral: nu must be nonnegative");
  require_off_cut(z, "bilinear_pole_integral");
  const int K = std::max(n, n + k);
  auto integral = [&](int M) {
    NodalBasis nb(base, gauss_rule(base.spec, M), K);
    CompensatedSum<cplx> s;
    double scale = 0.0;
    for (int i = 0; i < nb.rows(); ++i) {
      const cplx t = nb.w()[i] * nb.l(i, n + k) * nb.l(i, n) / std::pow(z - nb.x()[i], nu);
      s.add(t);
      scale += std::abs(t);
    }
    return std::make_pair(s.value(), scale);
  };
  int M = K + 60;
  cplx v = integral(M).first;
  for (int attempt = 0; attempt < 8; ++attempt) {
    M *= 2;
    auto [v2, scale] = integral(M);
    if (std::abs(v2 - v) <= 1e-12 * std::max(std::abs(v2), 1e-3 * scale)) return v2;
    v = v2;
  }
  throw NonConvergence("bilinear_pole_integral: quadrature did not converge");
}

}  // namespace relasym
