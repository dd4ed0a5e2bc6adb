#pragma once

#include <complex>
#include <string>
#include <vector>

#include "relasym/error.hpp"

namespace relasym {

using cplx = std::complex<double>;

enum class WeightKind { chebyshev_first_kind, chebyshev_second_kind, legendre, jacobi };

struct MassPoint {
  double location = 0.0;
  double mass = 0.0;
};

/// A measure in M(0,1): a Jacobi-type weight on [-1,1] plus finitely many
/// mass points outside [-1,1].
struct BaseMeasureSpec {
  WeightKind kind = WeightKind::legendre;
  double alpha = 0.0;  // exponent of (1-x), only read for kind == jacobi
  double beta = 0.0;   // exponent of (1+x), only read for kind == jacobi
  std::vector<MassPoint> mass_points;

  void validate() const;
  double jacobi_alpha() const;
  double jacobi_beta() const;
  double continuous_mass() const;
  double total_mass() const;
  double weight(double x) const;
  bool pure() const { return mass_points.empty(); }
  bool same_as(const BaseMeasureSpec& o) const;
};

std::string to_string(WeightKind k);
WeightKind weight_kind_from_string(const std::string& s);

/// Orthonormal recurrence x l_n = a_{n+1} l_{n+1} + b_n l_n + a_n l_{n-1}.
/// a[0] is unused; a[n] holds a_n for 1 <= n <= nmax.
struct RecurrenceTable {
  BaseMeasureSpec spec;
  int nmax = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> tau;

  double an(int n) const { return a.at(n); }
  double bn(int n) const { return b.at(n); }
};

/// Gauss rule for the continuous part plus the atoms of the measure.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<MassPoint> atoms;

  int size() const { return static_cast<int>(nodes.size()); }
  int exact_degree() const { return 2 * size() - 1; }
  // All abscissae (nodes then atoms) and their weights, for uniform loops.
  std::vector<double> abscissae() const;
  std::vector<double> all_weights() const;
};

enum class Basis { monic_mu, orthonormal_mu };

/// Polynomial as coefficients over L_k (monic) or l_k (orthonormal).
class PolyInBasis {
 public:
  PolyInBasis() = default;
  PolyInBasis(Basis basis, std::vector<cplx> coeffs);

  Basis basis() const { return basis_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx coeff(int k) const { return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : cplx(0.0); }

 private:
  Basis basis_ = Basis::orthonormal_mu;
  std::vector<cplx> coeffs_;
};

RecurrenceTable recurrence_for(const BaseMeasureSpec& spec, int nmax);

/// Analytic orthonormal recurrence of the weight alone (atoms ignored).
void jacobi_recurrence(double alpha, double beta, int n, std::vector<double>& a,
                       std::vector<double>& b);

/// Gauss rule with m nodes for the continuous part of `spec`, atoms copied.
/// Results are memoized; the returned rule is independent of any table.
QuadratureRule gauss_rule(const BaseMeasureSpec& spec, int m);
QuadratureRule gauss_rule(const RecurrenceTable& table, int m);

/// Nodes and weights from a symmetric tridiagonal Jacobi matrix (implicit QL,
/// accumulating only the first eigenvector components).
void golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag, double mass,
                  std::vector<double>& nodes, std::vector<double>& weights);

/// (p_n, p_n', ..., p_n^{(order)}) at z by the differentiated recurrence.
std::vector<cplx> eval_jet(const RecurrenceTable& t, int n, cplx z, int order, Basis basis);

/// jets[k][j] = l_k^{(j)}(z) (orthonormal), k = 0..n.
std::vector<std::vector<cplx>> orthonormal_jets(const RecurrenceTable& t, int n, cplx z, int order);

/// Same in long double, for the extended precision mode.
std::vector<std::vector<std::complex<long double>>> orthonormal_jets_ext(const RecurrenceTable& t,
                                                                         int n, cplx z, int order);

PolyInBasis to_basis(const PolyInBasis& p, Basis target, const RecurrenceTable& t);

/// (p(z), p'(z), ..., p^{(order)}(z)).
std::vector<cplx> eval_poly(const PolyInBasis& p, const RecurrenceTable& t, cplx z, int order);

/// sum_k |c_k| |l_k(z)|, the natural scale for rounding errors in p(z).
double eval_abs_scale(const PolyInBasis& p, const RecurrenceTable& t, cplx z, int order);

/// Orthonormal coefficients of x^k, k <= deg.
PolyInBasis monomial(const RecurrenceTable& t, int k);

/// Orthonormal coefficients of x*p.
PolyInBasis times_x(const PolyInBasis& p, const RecurrenceTable& t);

cplx inner_mu(const PolyInBasis& p, const PolyInBasis& q, const QuadratureRule& rule,
              const RecurrenceTable& t);

/// Values of l_0..l_K at every abscissa of a rule (nodes, then atoms).
class NodalBasis {
 public:
  NodalBasis(const RecurrenceTable& t, const QuadratureRule& rule, int K);

  int rows() const { return static_cast<int>(x_.size()); }
  int max_degree() const { return K_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& w() const { return w_; }
  double l(int i, int k) const { return vals_[static_cast<size_t>(i) * (K_ + 1) + k]; }

  std::vector<cplx> values(const PolyInBasis& p) const;
  /// Orthonormal coefficients 0..deg of the polynomial with the given nodal
  /// values; exact when the rule integrates degree (deg_p + deg) exactly.
  std::vector<cplx> project(const std::vector<cplx>& vals, int deg) const;
  cplx integrate(const std::vector<cplx>& vals) const;

 private:
  int K_;
  std::vector<double> x_, w_, vals_;
};

/// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <class T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_, im_;
};

}  // namespace relasym
