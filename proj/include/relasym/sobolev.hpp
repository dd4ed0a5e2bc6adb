#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "relasym/joukowski.hpp"
#include "relasym/measure.hpp"
#include "relasym/modified.hpp"

namespace relasym {

/// One point term: sum_{i<=N} h^{(i)}(c) sum_k gamma(i,k) g^{(k)}(c).
struct SobolevTerm {
  cplx c;
  int N = 0;
  Eigen::MatrixXcd gamma;  // (N+1) x (J+1)

  int J() const { return static_cast<int>(gamma.cols()) - 1; }
};

struct SobolevSpec {
  std::vector<SobolevTerm> terms;
  // M_{j,0..N_j} when the spec is the diagonal form; mirrors gamma.
  std::optional<std::vector<std::vector<cplx>>> diagonal;

  static SobolevSpec from_diagonal(const std::vector<cplx>& points, const std::vector<std::vector<cplx>>& M);
  /// gamma(i,m) = A_{i+m} binom(i+m, i): the form equivalent to the Pade
  /// orthogonality with pole coefficients A_{j,0..N_j}.
  static SobolevSpec pade_form(const std::vector<cplx>& points, const std::vector<std::vector<cplx>>& A);

  int A() const;
  int max_derivative() const;
  void validate(const BaseMeasureSpec& mu) const;
  bool is_diagonal() const;
  bool is_real_nonnegative_diagonal() const;
  /// s(z) = prod (z - c_j)^{N_j+1} as a modifier.
  RationalModifier s_modifier() const;
};

struct TermRegularity {
  bool is_regular = false;
  int I = 0;
  cplx det_gamma_star;
};

struct RegularityReport {
  std::vector<TermRegularity> terms;
  bool overall_regular = false;
  int A = 0;
  int N_total = 0;
};

RegularityReport regularity(const SobolevSpec& spec);
/// regularity() that throws ConfigError with a diagnostic when not regular.
RegularityReport require_regular(const SobolevSpec& spec);

/// (c_j, I_j) for the relative asymptotic limit of S_n / L_n.
std::vector<AttractionFactor> attraction_factors(const SobolevSpec& spec);

cplx sobolev_inner(const PolyInBasis& h, const PolyInBasis& g, const SobolevSpec& spec, const RecurrenceTable& base);
cplx sobolev_inner(const PolyInBasis& h, const PolyInBasis& g, const SobolevSpec& spec, const RecurrenceTable& base,
                   const QuadratureRule& rule);

/// Monic S_n stored over the orthonormal basis, plus the data used by the
/// normalization limits.
struct SobolevOP {
  int n = 0;
  PolyInBasis rep;
  std::vector<cplx> lambda;     // lambda-method only, lambda[0] == 1
  std::vector<cplx> op_values;  // L_{j,i}(S_n; c_j), ordered by (j, i)
  cplx norm_sq;                 // <S_n, S_n>
  double cond = 0.0;
};

/// Kernel (bordered) construction; real positive diagonal specs only.
SobolevOP sn_kernel(int n, const SobolevSpec& spec, const RecurrenceTable& base);

/// Bordered construction with the operator values as unknowns; any spec.
SobolevOP sn_bordered(int n, const SobolevSpec& spec, const RecurrenceTable& base);

/// S_n = sum_k lambda_k Q_{n-k} with Q_m orthogonal for s d mu.
class SobolevLambdaSolver {
 public:
  SobolevLambdaSolver(SobolevSpec spec, const RecurrenceTable& base);

  SobolevOP solve(int n) const;
  int min_index() const { return 2 * A_ + 1; }
  const SobolevSpec& spec() const { return spec_; }
  const RecurrenceTable& base() const { return family_->base(); }
  const ModifiedFamily& family() const { return *family_; }

 private:
  struct Functionals {
    std::vector<cplx> J;  // int g_{j,i} Q dmu
    std::vector<cplx> L;  // L_{j,i}(Q; c_j)
  };
  Functionals functionals(int m) const;

  SobolevSpec spec_;
  int A_ = 0;
  std::shared_ptr<ModifiedFamily> family_;
  std::vector<Eigen::MatrixXcd> dual_;  // Hermite dual coefficients per term
};

SobolevOP sn_lambda(int n, const SobolevSpec& spec, const RecurrenceTable& base);

/// gamma_n = <S_n,S_n>^{-1/2}: principal branch first, then the branch that
/// keeps gamma_{n+1}/gamma_n closest to 2.
std::vector<cplx> normalization_sequence(const std::vector<cplx>& norm_sq);

/// max over test polynomials p of |<p, S>| / (absolute scale of the same sum).
double sobolev_residual(const PolyInBasis& S, const std::vector<PolyInBasis>& tests, const SobolevSpec& spec,
                        const RecurrenceTable& base);
/// sobolev_residual with tests l_0..l_{n-1}.
double sobolev_orthogonality_residual(const SobolevOP& op, const SobolevSpec& spec, const RecurrenceTable& base);

}  // namespace relasym
