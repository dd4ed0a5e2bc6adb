#pragma once

#include <memory>
#include <vector>

#include "relasym/measure.hpp"
#include "relasym/sobolev.hpp"

namespace relasym {

struct PolePart {
  cplx c;
  std::vector<cplx> A;  // A_{j,0..N_j}, last entry nonzero
  int N() const { return static_cast<int>(A.size()) - 1; }
};

/// f(z) = int dmu(x)/(z-x) + sum_j sum_i A_{j,i} i! / (z-c_j)^{i+1}
struct StieltjesFn {
  BaseMeasureSpec base;
  std::vector<PolePart> poles;

  void validate() const;
  SobolevSpec to_sobolev() const;
  /// (c_j, N_j + 1) for the limit of Q_n / L_n.
  std::vector<AttractionFactor> attraction() const;
};

/// f(z) by Gauss quadrature of the Cauchy integral plus the pole terms.
cplx evaluate_f(const StieltjesFn& f, cplx z);

struct PadeApproximant {
  int n = 0;
  PolyInBasis Q;  // monic denominator, orthonormal coefficients
  PolyInBasis P;  // numerator, degree <= n-1, orthonormal coefficients
};

struct ErrorRatio {
  cplx ratio;
  cplx e_n, e_n1;
  bool saturated = false;  // an error underflowed; ratio meaningless
};

class PadeSolver {
 public:
  PadeSolver(StieltjesFn f, const RecurrenceTable& base);

  const StieltjesFn& function() const { return f_; }
  const RecurrenceTable& base() const { return lam_.base(); }
  int min_index() const { return lam_.min_index(); }

  SobolevOP denominator_op(int n) const;
  PolyInBasis denominator(int n) const { return denominator_op(n).rep; }
  PolyInBasis numerator(int n, const PolyInBasis& Q) const;
  PadeApproximant approximant(int n) const;

  /// f(z) - P_n(z)/Q_n(z) through the remainder integral (no subtraction).
  cplx error(int n, cplx z) const;
  /// Same, reusing a denominator from denominator_op().
  cplx error(const SobolevOP& op, cplx z) const;
  /// f(z) - P_n(z)/Q_n(z) by direct evaluation.
  cplx error_direct(int n, cplx z) const;
  ErrorRatio error_ratio(int n, cplx z) const;

 private:
  StieltjesFn f_;
  SobolevLambdaSolver lam_;
};

PolyInBasis pade_denominator(int n, const StieltjesFn& f, const RecurrenceTable& base);
PolyInBasis pade_numerator(int n, const StieltjesFn& f, const PolyInBasis& Q, const RecurrenceTable& base);
ErrorRatio error_ratio(int n, cplx z, const StieltjesFn& f, const RecurrenceTable& base);

/// max_{k<n} of the normalized residual of
/// int l_k Q dmu + sum A_{j,i} (l_k Q)^{(i)}(c_j).
double pade_orthogonality_residual(const PolyInBasis& Q, const StieltjesFn& f, const RecurrenceTable& base);

/// Moments m_k of f: f(z) = sum_k m_k z^{-k-1}.
std::vector<cplx> stieltjes_moments(const StieltjesFn& f, const RecurrenceTable& base, int count);
/// Laurent coefficients e_k of P/Q = sum_k e_k z^{-k-1}, in long double.
std::vector<cplx> laurent_coefficients(const PolyInBasis& P, const PolyInBasis& Q, const RecurrenceTable& base,
                                       int count);

struct RootLawSample {
  int n = 0;
  double root_error;  // (max_K |f - pi_n|)^{1/(2n)}
  double target;      // 1 / min_K |phi|
};

/// n-th root law on a circle of sample points around `center`.
RootLawSample nth_root_law(const PadeSolver& solver, int n, cplx center, double radius, int samples = 16);

}  // namespace relasym
