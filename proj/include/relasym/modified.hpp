#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "relasym/measure.hpp"
#include "relasym/modifier.hpp"

namespace relasym {

/// Q_n for d rho = r d mu, through R_n = S Q_n = sum_k lambda_k L_{n+A-k}.
struct ModifiedOP {
  int n = 0;
  std::vector<cplx> lambda;  // lambda[0] == 1
  PolyInBasis rep;           // R_n over the monic basis
  PolyInBasis q;             // monic Q_n over the orthonormal basis
  cplx kappa_sq_inv;         // int Q_n^2 r dmu
  cplx x_moment;             // int x Q_n^2 r dmu
  double cond = 0.0;         // condition estimate of the equilibrated system

  cplx beta() const { return x_moment / kappa_sq_inv; }
};

ModifiedOP solve_Q(int n, const RationalModifier& r, const RecurrenceTable& base);

struct RecurrenceStep {
  cplx alpha_sq;
  cplx beta;
  double residual;  // ||Q_{n+1} - (x - beta) Q_n + alpha^2 Q_{n-1}|| / ||Q_{n+1}||
};

RecurrenceStep recurrence_extract(const ModifiedOP& prev, const ModifiedOP& cur, const ModifiedOP& next,
                                  const RecurrenceTable& base);

/// max_{k<n} |int l_k Q_n r dmu| / int |l_k Q_n r| dmu
double orthogonality_residual(const ModifiedOP& op, const RationalModifier& r, const RecurrenceTable& base);

/// Lazily solved, thread-safe family {Q_n} for one modifier.
class ModifiedFamily {
 public:
  ModifiedFamily(RationalModifier r, RecurrenceTable base);

  const RationalModifier& modifier() const { return r_; }
  const RecurrenceTable& base() const { return base_; }
  int min_index() const { return r_.A() + r_.B() + 1; }

  const ModifiedOP& get(int n) const;
  /// alpha_n^2 = kappa_{n-1}^2 / kappa_n^2
  cplx alpha_sq(int n) const;
  cplx kappa_sq(int n) const { return 1.0 / get(n).kappa_sq_inv; }
  /// kappa_{n0} by the principal root, then kappa_{k+1} = kappa_k / alpha_{k+1}.
  std::vector<cplx> kappa_chain(int n0, int n1) const;
  /// kappa_n kappa_{n+nu} for nu >= 0, branch of the recursive choice.
  cplx kappa_pair(int n, int nu) const;

 private:
  RationalModifier r_;
  RecurrenceTable base_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const ModifiedOP>> ops_;
};

struct WeakLimitProbe {
  cplx lhs;  // int f q_n q_{n+nu} d rho
  cplx rhs;  // (1/pi) int f t_|nu| / sqrt(1-x^2) dx
};

WeakLimitProbe weak_limit_probe(const PolyInBasis& f, int nu, int n, const ModifiedFamily& fam);

/// int |q_n q_{n+nu}| |d rho|
double bilinear_variation(int n, int nu, const ModifiedFamily& fam);

/// int l_{n+k} l_n / (z-x)^nu dmu
cplx bilinear_pole_integral(int n, int k, int nu, cplx z, const RecurrenceTable& base);

}  // namespace relasym
