#include "relasym/linalg.hpp"

#include <cmath>
#include <limits>

#include "relasym/error.hpp"

namespace relasym {

Eigen::VectorXcd solve_equilibrated(const Eigen::MatrixXcd& mat, const Eigen::VectorXcd& rhs, double& cond) {
  if (!mat.allFinite() || !rhs.allFinite())
    throw NumericalError("linear system has non-finite entries (overflow at this degree)");
  const Eigen::Index n = mat.rows();
  Eigen::MatrixXcd m = mat;
  Eigen::VectorXcd b = rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = m.row(i).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      m.row(i) /= s;
      b(i) /= s;
    }
  }
  Eigen::VectorXd colscale = Eigen::VectorXd::Ones(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    double s = m.col(j).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      m.col(j) /= s;
      colscale(j) = s;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  Eigen::VectorXcd x = svd.solve(b);
  for (Eigen::Index j = 0; j < x.size(); ++j) x(j) /= colscale(j);
  return x;
}

}  // namespace relasym
