#include "relasym/zeros.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "relasym/joukowski.hpp"

namespace relasym {

namespace {

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

double root_residual(const PolyInBasis& p, const RecurrenceTable& base, cplx root) {
  auto v = eval_poly(p, base, root, 1);
  if (v[0] == cplx(0.0)) return 0.0;
  return std::abs(v[0]) / (std::abs(v[1]) * std::max(1.0, std::abs(root)));
}

std::vector<cplx> roots(const PolyInBasis& p0, const RecurrenceTable& base) {
  PolyInBasis p = to_basis(p0, Basis::orthonormal_mu, base);
  const int n = p.degree();
  if (n < 1) return {};
  if (n > base.nmax) throw ConfigError("roots: degree exceeds recurrence table");
  const auto& d = p.coeffs();
  // comrade matrix: J_n - (a_n / d_n) e_{n-1} d^T
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    C(k, k) = base.b[k];
    if (k + 1 < n) {
      C(k, k + 1) = base.a[k + 1];
      C(k + 1, k) = base.a[k + 1];
    }
  }
  for (int k = 0; k < n; ++k) C(n - 1, k) -= base.a[n] / d[n] * d[k];
  balance(C);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw NumericalError("roots: eigenvalue iteration failed");
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& z : r) {
    double res = root_residual(p, base, z);
    for (int it = 0; it < 3; ++it) {
      auto v = eval_poly(p, base, z, 1);
      if (v[1] == cplx(0.0)) break;
      const cplx zn = z - v[0] / v[1];
      const double rn = root_residual(p, base, zn);
      if (!(rn < res)) break;
      z = zn;
      res = rn;
    }
    if (!(res < 1e-7)) throw NumericalError("roots: residual " + std::to_string(res) + " above tolerance");
  }
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

double default_cluster_radius(const std::vector<cplx>& centers) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < centers.size(); ++i) {
    m = std::min(m, cut_distance(centers[i]));
    for (size_t j = 0; j < i; ++j) m = std::min(m, std::abs(centers[i] - centers[j]));
  }
  return 0.1 * m;
}

ZeroReport cluster(const std::vector<cplx>& rts, const std::vector<cplx>& centers, double radius, double band) {
  if (!(radius > 0.0)) throw ConfigError("cluster: radius must be positive");
  for (size_t i = 0; i < centers.size(); ++i) {
    if (!(radius < 0.5 * cut_distance(centers[i])))
      throw ConfigError("cluster: disk around a center reaches halfway to [-1,1]");
    for (size_t j = 0; j < i; ++j)
      if (!(radius < 0.5 * std::abs(centers[i] - centers[j]))) throw ConfigError("cluster: overlapping disks");
  }
  ZeroReport z;
  z.roots = rts;
  z.centers = centers;
  z.radius = radius;
  z.support_band = band;
  z.cluster_counts.assign(centers.size(), 0);
  for (cplx r : rts) {
    bool assigned = false;
    for (size_t i = 0; i < centers.size() && !assigned; ++i)
      if (std::abs(r - centers[i]) <= radius) {
        ++z.cluster_counts[i];
        assigned = true;
      }
    if (!assigned && cut_distance(r) <= band) {
      ++z.support_count;
      assigned = true;
    }
    if (!assigned) z.unassigned.push_back(r);
  }
  return z;
}

}  // namespace relasym
