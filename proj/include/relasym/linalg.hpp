#pragma once

#include <Eigen/Dense>

namespace relasym {

/// Solves mat * x = rhs after row and column equilibration; `cond` receives
/// the 2-norm condition number of the equilibrated matrix.
Eigen::VectorXcd solve_equilibrated(const Eigen::MatrixXcd& mat, const Eigen::VectorXcd& rhs, double& cond);

}  // namespace relasym
