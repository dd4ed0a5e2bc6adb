#include "relasym/sobolev.hpp"

#include <cmath>
#include <string>

#include "relasym/linalg.hpp"

namespace relasym {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

struct PointJets {
  // jets[j][k][d] = l_k^{(d)}(c_j), k = 0..n
  std::vector<std::vector<std::vector<cplx>>> jets;
};

PointJets point_jets(int n, const SobolevSpec& spec, const RecurrenceTable& base) {
  PointJets pj;
  for (const auto& t : spec.terms) pj.jets.push_back(orthonormal_jets(base, n, t.c, std::max(t.N, t.J())));
  return pj;
}

// Kernel sum_{k<n} l_k^{(d1)}(c1) l_k^{(d2)}(c2).
cplx kernel(const std::vector<std::vector<cplx>>& j1, int d1, const std::vector<std::vector<cplx>>& j2, int d2, int n) {
  CompensatedSum<cplx> s;
  for (int k = 0; k < n; ++k) s.add(j1[k][d1] * j2[k][d2]);
  return s.value();
}

struct Pair {
  int j, i;
};

std::vector<Pair> all_pairs(const SobolevSpec& spec) {
  std::vector<Pair> p;
  for (int j = 0; j < static_cast<int>(spec.terms.size()); ++j)
    for (int i = 0; i <= spec.terms[j].N; ++i) p.push_back({j, i});
  return p;
}

cplx norm_from_op_values(int n, const std::vector<Pair>& pairs, const std::vector<cplx>& w, const PointJets& pj,
                         const RecurrenceTable& base) {
  CompensatedSum<cplx> s;
  s.add(1.0 / (base.tau[n] * base.tau[n]));
  for (size_t p = 0; p < pairs.size(); ++p) s.add(pj.jets[pairs[p].j][n][pairs[p].i] / base.tau[n] * w[p]);
  return s.value();
}

void check_table(int n, const RecurrenceTable& base, const char* what) {
  if (n > base.nmax) throw ConfigError(std::string(what) + ": recurrence table too short for degree " + std::to_string(n));
  if (n < 1) throw ConfigError(std::string(what) + ": degree must be positive");
}

}  // namespace

SobolevSpec SobolevSpec::from_diagonal(const std::vector<cplx>& points, const std::vector<std::vector<cplx>>& M) {
  if (points.size() != M.size()) throw ConfigError("diagonal spec: one coefficient list per point is required");
  SobolevSpec s;
  for (size_t j = 0; j < points.size(); ++j) {
    if (M[j].empty()) throw ConfigError("diagonal spec: empty coefficient list");
    SobolevTerm t;
    t.c = points[j];
    t.N = static_cast<int>(M[j].size()) - 1;
    t.gamma = Eigen::MatrixXcd::Zero(t.N + 1, t.N + 1);
    for (int i = 0; i <= t.N; ++i) t.gamma(i, i) = M[j][i];
    s.terms.push_back(t);
  }
  s.diagonal = M;
  return s;
}

SobolevSpec SobolevSpec::pade_form(const std::vector<cplx>& points, const std::vector<std::vector<cplx>>& A) {
  if (points.size() != A.size()) throw ConfigError("pade spec: one coefficient list per pole is required");
  SobolevSpec s;
  for (size_t j = 0; j < points.size(); ++j) {
    SobolevTerm t;
    t.c = points[j];
    t.N = static_cast<int>(A[j].size()) - 1;
    t.gamma = Eigen::MatrixXcd::Zero(t.N + 1, t.N + 1);
    for (int i = 0; i <= t.N; ++i)
      for (int m = 0; i + m <= t.N; ++m) t.gamma(i, m) = A[j][i + m] * binom(i + m, i);
    s.terms.push_back(t);
  }
  return s;
}

int SobolevSpec::A() const {
  int a = 0;
  for (const auto& t : terms) a += t.N + 1;
  return a;
}

int SobolevSpec::max_derivative() const {
  int m = 0;
  for (const auto& t : terms) m = std::max({m, t.N, t.J()});
  return m;
}

void SobolevSpec::validate(const BaseMeasureSpec& mu) const {
  for (size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    if (t.N < 0 || t.gamma.rows() != t.N + 1 || t.gamma.cols() < 1)
      throw ConfigError("sobolev term " + std::to_string(j) + ": gamma must have N+1 rows");
    if (cut_distance(t.c) <= 1e-12) throw ConfigError("sobolev point lies on [-1,1]");
    for (const auto& m : mu.mass_points)
      if (std::abs(t.c - m.location) <= 1e-12) throw ConfigError("sobolev point sits on a mass point");
    for (size_t k = 0; k < j; ++k)
      if (std::abs(terms[k].c - t.c) <= 1e-12) throw ConfigError("sobolev points must be distinct");
    if (t.gamma.row(t.N).cwiseAbs().maxCoeff() == 0.0)
      throw ConfigError("sobolev term " + std::to_string(j) + ": operator of highest order N is identically zero");
  }
  if (diagonal) {
    if (diagonal->size() != terms.size()) throw ConfigError("diagonal shortcut does not match the terms");
    for (size_t j = 0; j < terms.size(); ++j) {
      const auto& g = terms[j].gamma;
      if (static_cast<int>((*diagonal)[j].size()) != terms[j].N + 1 || g.cols() != g.rows())
        throw ConfigError("diagonal shortcut does not match gamma");
      for (int i = 0; i < g.rows(); ++i)
        for (int k = 0; k < g.cols(); ++k)
          if (g(i, k) != (i == k ? (*diagonal)[j][i] : cplx(0.0)))
            throw ConfigError("diagonal shortcut does not match gamma");
    }
  }
}

bool SobolevSpec::is_diagonal() const {
  for (const auto& t : terms)
    for (int i = 0; i < t.gamma.rows(); ++i)
      for (int k = 0; k < t.gamma.cols(); ++k)
        if (i != k && t.gamma(i, k) != cplx(0.0)) return false;
  return true;
}

bool SobolevSpec::is_real_nonnegative_diagonal() const {
  if (!is_diagonal()) return false;
  for (const auto& t : terms) {
    if (t.c.imag() != 0.0) return false;
    for (int i = 0; i < std::min(t.gamma.rows(), t.gamma.cols()); ++i)
      if (t.gamma(i, i).imag() != 0.0 || t.gamma(i, i).real() < 0.0) return false;
  }
  return true;
}

RationalModifier SobolevSpec::s_modifier() const {
  RationalModifier r;
  for (const auto& t : terms) r.zeros.push_back({t.c, t.N + 1});
  return r;
}

std::vector<AttractionFactor> attraction_factors(const SobolevSpec& spec) {
  RegularityReport r = require_regular(spec);
  std::vector<AttractionFactor> f;
  for (size_t j = 0; j < spec.terms.size(); ++j) f.push_back({spec.terms[j].c, r.terms[j].I});
  return f;
}

RegularityReport regularity(const SobolevSpec& spec) {
  RegularityReport rep;
  rep.overall_regular = true;
  for (const auto& t : spec.terms) {
    std::vector<int> rows, cols;
    for (int i = 0; i < t.gamma.rows(); ++i)
      if (t.gamma.row(i).cwiseAbs().maxCoeff() > 0.0) rows.push_back(i);
    for (int k = 0; k < t.gamma.cols(); ++k)
      if (t.gamma.col(k).cwiseAbs().maxCoeff() > 0.0) cols.push_back(k);
    TermRegularity tr;
    if (rows.size() == cols.size() && !rows.empty()) {
      const int d = static_cast<int>(rows.size());
      Eigen::MatrixXcd g(d, d);
      double hadamard = 1.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) g(a, b) = t.gamma(rows[a], cols[b]);
        hadamard *= g.row(a).norm();
      }
      tr.det_gamma_star = g.determinant();
      tr.I = d;
      tr.is_regular = std::abs(tr.det_gamma_star) > 1e-12 * hadamard;
    }
    rep.overall_regular = rep.overall_regular && tr.is_regular;
    rep.A += t.N + 1;
    rep.N_total += tr.I;
    rep.terms.push_back(tr);
  }
  return rep;
}

RegularityReport require_regular(const SobolevSpec& spec) {
  RegularityReport r = regularity(spec);
  for (size_t j = 0; j < r.terms.size(); ++j)
    if (!r.terms[j].is_regular)
      throw ConfigError("sobolev inner product is not regular at point " + std::to_string(j) +
                        " (reduced coefficient matrix not square or singular)");
  return r;
}

cplx sobolev_inner(const PolyInBasis& h, const PolyInBasis& g, const SobolevSpec& spec, const RecurrenceTable& base) {
  const int d = std::max(h.degree(), 0) + std::max(g.degree(), 0);
  return sobolev_inner(h, g, spec, base, gauss_rule(base.spec, d / 2 + 1));
}

cplx sobolev_inner(const PolyInBasis& h, const PolyInBasis& g, const SobolevSpec& spec, const RecurrenceTable& base,
                   const QuadratureRule& rule) {
  CompensatedSum<cplx> s;
  s.add(inner_mu(h, g, rule, base));
  for (const auto& t : spec.terms) {
    auto hj = eval_poly(h, base, t.c, t.N);
    auto gj = eval_poly(g, base, t.c, t.J());
    for (int i = 0; i <= t.N; ++i)
      for (int k = 0; k <= t.J(); ++k)
        if (t.gamma(i, k) != cplx(0.0)) s.add(hj[i] * t.gamma(i, k) * gj[k]);
  }
  return s.value();
}

SobolevOP sn_bordered(int n, const SobolevSpec& spec, const RecurrenceTable& base) {
  spec.validate(base.spec);
  check_table(n, base, "sn_bordered");
  const auto pairs = all_pairs(spec);
  const int U = static_cast<int>(pairs.size());
  PointJets pj = point_jets(n, spec, base);
  const double inv_tau = 1.0 / base.tau[n];

  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Identity(U, U);
  Eigen::VectorXcd rhs(U);
  for (int p = 0; p < U; ++p) {
    const auto& t = spec.terms[pairs[p].j];
    const auto& jp = pj.jets[pairs[p].j];
    CompensatedSum<cplx> lv;
    for (int d = 0; d <= t.J(); ++d) {
      const cplx g = t.gamma(pairs[p].i, d);
      if (g == cplx(0.0)) continue;
      lv.add(g * jp[n][d] * inv_tau);
      for (int q = 0; q < U; ++q) mat(p, q) += g * kernel(jp, d, pj.jets[pairs[q].j], pairs[q].i, n);
    }
    rhs(p) = lv.value();
  }
  SobolevOP op;
  op.n = n;
  Eigen::VectorXcd w = U > 0 ? solve_equilibrated(mat, rhs, op.cond) : Eigen::VectorXcd();
  if (U > 0 && !(op.cond < 1e13)) throw SingularSystem("sn_bordered: singular bordered system", op.cond);
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = inv_tau;
  for (int k = 0; k < n; ++k) {
    CompensatedSum<cplx> s;
    for (int q = 0; q < U; ++q) s.add(-w(q) * pj.jets[pairs[q].j][k][pairs[q].i]);
    c[k] = s.value();
  }
  op.rep = PolyInBasis(Basis::orthonormal_mu, c);
  op.op_values.assign(w.data(), w.data() + U);
  op.norm_sq = norm_from_op_values(n, pairs, op.op_values, pj, base);
  return op;
}

SobolevOP sn_kernel(int n, const SobolevSpec& spec, const RecurrenceTable& base) {
  spec.validate(base.spec);
  if (!spec.is_real_nonnegative_diagonal())
    throw ConfigError("sn_kernel: requires the diagonal form with real points and nonnegative coefficients");
  check_table(n, base, "sn_kernel");
  const auto pairs = all_pairs(spec);
  std::vector<Pair> active;
  std::vector<double> M;
  for (const auto& p : pairs) {
    const double m = spec.terms[p.j].gamma(p.i, p.i).real();
    if (m > 0.0) {
      active.push_back(p);
      M.push_back(m);
    }
  }
  const int U = static_cast<int>(active.size());
  PointJets pj = point_jets(n, spec, base);
  const double inv_tau = 1.0 / base.tau[n];

  // u_p + sum_q K^{(i_p, i_q)}(c_p, c_q) M_q u_q = L_n^{(i_p)}(c_p), u_p = S_n^{(i_p)}(c_p)
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Identity(U, U);
  Eigen::VectorXcd rhs(U);
  for (int p = 0; p < U; ++p) {
    const auto& jp = pj.jets[active[p].j];
    rhs(p) = jp[n][active[p].i] * inv_tau;
    for (int q = 0; q < U; ++q) mat(p, q) += kernel(jp, active[p].i, pj.jets[active[q].j], active[q].i, n) * M[q];
  }
  SobolevOP op;
  op.n = n;
  Eigen::VectorXcd u = U > 0 ? solve_equilibrated(mat, rhs, op.cond) : Eigen::VectorXcd();
  if (U > 0 && !(op.cond < 1e13)) throw SingularSystem("sn_kernel: singular bordered system", op.cond);
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = inv_tau;
  for (int k = 0; k < n; ++k) {
    CompensatedSum<cplx> s;
    for (int q = 0; q < U; ++q) s.add(-M[q] * u(q) * pj.jets[active[q].j][k][active[q].i]);
    c[k] = s.value();
  }
  op.rep = PolyInBasis(Basis::orthonormal_mu, c);
  op.op_values.assign(pairs.size(), 0.0);
  for (int q = 0; q < U; ++q)
    for (size_t p = 0; p < pairs.size(); ++p)
      if (pairs[p].j == active[q].j && pairs[p].i == active[q].i) op.op_values[p] = M[q] * u(q);
  op.norm_sq = norm_from_op_values(n, pairs, op.op_values, pj, base);
  return op;
}

SobolevLambdaSolver::SobolevLambdaSolver(SobolevSpec spec, const RecurrenceTable& base) : spec_(std::move(spec)) {
  spec_.validate(base.spec);
  require_regular(spec_);
  A_ = spec_.A();
  family_ = std::make_shared<ModifiedFamily>(spec_.s_modifier(), base);
  for (size_t j = 0; j < spec_.terms.size(); ++j) {
    const auto& t = spec_.terms[j];
    // Taylor coefficients at c_j of prod_{j' != j} (x - c_j')^{N_j'+1}, up to order N_j.
    std::vector<cplx> sig{1.0};
    for (size_t jj = 0; jj < spec_.terms.size(); ++jj) {
      if (jj == j) continue;
      const cplx shift = t.c - spec_.terms[jj].c;
      for (int e = 0; e <= spec_.terms[jj].N; ++e) {
        std::vector<cplx> nxt(sig.size() + 1, 0.0);
        for (size_t k = 0; k < sig.size(); ++k) {
          nxt[k] += shift * sig[k];
          nxt[k + 1] += sig[k];
        }
        sig.swap(nxt);
      }
    }
    const int N = t.N;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int l = 1; l <= N + 1; ++l)
      for (int i = N + 1 - l; i <= N; ++i) {
        const int idx = i - (N + 1 - l);
        if (idx < static_cast<int>(sig.size())) H(i, l - 1) = factorial(i) * sig[idx];
      }
    dual_.push_back(H.inverse());
  }
}

SobolevLambdaSolver::Functionals SobolevLambdaSolver::functionals(int m) const {
  const ModifiedOP& Q = family_->get(m);
  const RecurrenceTable& base = family_->base();
  const RationalModifier s = spec_.s_modifier();
  NodalBasis nb(base, gauss_rule(base.spec, m + A_ + 50), m);
  auto qv = nb.values(Q.q);
  std::vector<cplx> q2s(nb.rows());
  for (int i = 0; i < nb.rows(); ++i) q2s[i] = nb.w()[i] * qv[i] * qv[i] * s.numerator(nb.x()[i]);

  Functionals f;
  for (size_t j = 0; j < spec_.terms.size(); ++j) {
    const auto& t = spec_.terms[j];
    const int T = std::max(t.N, t.J());
    auto qj = eval_poly(Q.q, base, t.c, T);
    std::vector<cplx> qt(T + 1), G(t.N + 1), F(t.N + 1);
    for (int k = 0; k <= T; ++k) qt[k] = qj[k] / factorial(k);
    // Taylor coefficients of G(z) = int Q^2 s / (z - x) dmu at c_j
    for (int k = 0; k <= t.N; ++k) {
      CompensatedSum<cplx> acc;
      for (int i = 0; i < nb.rows(); ++i) acc.add(q2s[i] / std::pow(t.c - nb.x()[i], k + 1));
      G[k] = (k % 2 ? -1.0 : 1.0) * acc.value();
    }
    // F = G / Q; int Q s/(x-c)^l dmu = -F_{l-1}
    for (int k = 0; k <= t.N; ++k) {
      cplx v = G[k];
      for (int r = 0; r < k; ++r) v -= F[r] * qt[k - r];
      F[k] = v / qt[0];
    }
    for (int i = 0; i <= t.N; ++i) {
      cplx Jv = 0.0, Lv = 0.0;
      for (int l = 1; l <= t.N + 1; ++l) Jv += dual_[j](l - 1, i) * -F[l - 1];
      for (int d = 0; d <= t.J(); ++d) Lv += t.gamma(i, d) * qj[d];
      f.J.push_back(Jv);
      f.L.push_back(Lv);
    }
  }
  return f;
}

SobolevOP SobolevLambdaSolver::solve(int n) const {
  const RecurrenceTable& base = family_->base();
  check_table(n + A_, base, "sn_lambda");
  if (n < min_index()) throw ConfigError("sn_lambda: n must be at least 2A+1 = " + std::to_string(min_index()));
  SobolevOP op;
  op.n = n;
  op.lambda.assign(A_ + 1, 0.0);
  op.lambda[0] = 1.0;
  std::vector<Functionals> fk;
  for (int k = 0; k <= A_; ++k) fk.push_back(functionals(n - k));
  if (A_ > 0) {
    Eigen::MatrixXcd mat(A_, A_);
    Eigen::VectorXcd rhs(A_);
    for (int p = 0; p < A_; ++p) {
      rhs(p) = -(fk[0].J[p] + fk[0].L[p]);
      for (int k = 1; k <= A_; ++k) mat(p, k - 1) = fk[k].J[p] + fk[k].L[p];
    }
    Eigen::VectorXcd lam = solve_equilibrated(mat, rhs, op.cond);
    if (!(op.cond < 1e10)) throw SingularSystem("sn_lambda: pre-asymptotic index n=" + std::to_string(n), op.cond);
    for (int k = 1; k <= A_; ++k) op.lambda[k] = lam(k - 1);
  }
  std::vector<cplx> c(n + 1, 0.0);
  for (int k = 0; k <= A_; ++k) {
    const auto& q = family_->get(n - k).q;
    for (int m = 0; m <= q.degree(); ++m) c[m] += op.lambda[k] * q.coeff(m);
  }
  c[n] = 1.0 / base.tau[n];
  op.rep = PolyInBasis(Basis::orthonormal_mu, c);
  op.op_values.assign(A_, 0.0);
  for (int p = 0; p < A_; ++p) {
    CompensatedSum<cplx> s;
    for (int k = 0; k <= A_; ++k) s.add(-op.lambda[k] * fk[k].J[p]);
    op.op_values[p] = s.value();
  }
  PointJets pj = point_jets(n, spec_, base);
  op.norm_sq = norm_from_op_values(n, all_pairs(spec_), op.op_values, pj, base);
  return op;
}

SobolevOP sn_lambda(int n, const SobolevSpec& spec, const RecurrenceTable& base) {
  return SobolevLambdaSolver(spec, base).solve(n);
}

std::vector<cplx> normalization_sequence(const std::vector<cplx>& norm_sq) {
  std::vector<cplx> g;
  for (size_t k = 0; k < norm_sq.size(); ++k) {
    cplx cand = 1.0 / std::sqrt(norm_sq[k]);
    if (!g.empty() && std::abs(-cand / g.back() - 2.0) < std::abs(cand / g.back() - 2.0)) cand = -cand;
    g.push_back(cand);
  }
  return g;
}

double sobolev_residual(const PolyInBasis& S, const std::vector<PolyInBasis>& tests, const SobolevSpec& spec,
                        const RecurrenceTable& base) {
  PolyInBasis s = to_basis(S, Basis::orthonormal_mu, base);
  int K = s.degree();
  for (const auto& p : tests) K = std::max(K, p.degree());
  NodalBasis nb(base, gauss_rule(base.spec, K + 2), K);
  auto sv = nb.values(s);
  // |S^{(d)}(c_j)| scale and value per term
  std::vector<std::vector<cplx>> sval;
  std::vector<std::vector<double>> sabs;
  for (const auto& t : spec.terms) {
    sval.push_back(eval_poly(s, base, t.c, t.J()));
    std::vector<double> a(t.J() + 1);
    for (int d = 0; d <= t.J(); ++d) a[d] = eval_abs_scale(s, base, t.c, d);
    sabs.push_back(a);
  }
  double worst = 0.0;
  for (const auto& p0 : tests) {
    PolyInBasis p = to_basis(p0, Basis::orthonormal_mu, base);
    auto pv = nb.values(p);
    CompensatedSum<cplx> val;
    double scale = 0.0;
    for (int i = 0; i < nb.rows(); ++i) {
      const cplx v = nb.w()[i] * pv[i] * sv[i];
      val.add(v);
      scale += std::abs(v);
    }
    for (size_t j = 0; j < spec.terms.size(); ++j) {
      const auto& t = spec.terms[j];
      auto pj = eval_poly(p, base, t.c, t.N);
      for (int i = 0; i <= t.N; ++i)
        for (int d = 0; d <= t.J(); ++d) {
          if (t.gamma(i, d) == cplx(0.0)) continue;
          val.add(pj[i] * t.gamma(i, d) * sval[j][d]);
          scale += std::abs(pj[i]) * std::abs(t.gamma(i, d)) * sabs[j][d];
        }
    }
    worst = std::max(worst, std::abs(val.value()) / scale);
  }
  return worst;
}

double sobolev_orthogonality_residual(const SobolevOP& op, const SobolevSpec& spec, const RecurrenceTable& base) {
  std::vector<PolyInBasis> tests;
  for (int k = 0; k < op.n; ++k) {
    std::vector<cplx> c(k + 1, 0.0);
    c[k] = 1.0;
    tests.emplace_back(Basis::orthonormal_mu, c);
  }
  return sobolev_residual(op.rep, tests, spec, base);
}

}  // namespace relasym
