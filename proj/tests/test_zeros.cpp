#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relasym/sobolev.hpp"
#include "relasym/zeros.hpp"

using namespace relasym;

namespace {
bool close_sets(std::vector<cplx> a, std::vector<cplx> b, double tol) {
  if (a.size() != b.size()) return false;
  for (cplx z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - z) < std::abs(q - z); });
    if (std::abs(*it - z) > tol) return false;
    b.erase(it);
  }
  return true;
}
}  // namespace

TEST_SUITE("zeros") {
  TEST_CASE("chebyshev T_2 roots") {
    auto t = recurrence_for(th::chebyshev(), 5);
    auto r = roots(th::unit(2, Basis::monic_mu), t);
    CHECK(close_sets(r, {cplx(-std::sqrt(0.5)), cplx(std::sqrt(0.5))}, 1e-14));
  }

  TEST_CASE("legendre L_5 roots") {
    auto t = recurrence_for(th::legendre(), 10);
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    auto r = roots(th::unit(5, Basis::orthonormal_mu), t);
    CHECK(close_sets(r, {cplx(-b), cplx(-a), cplx(0.0), cplx(a), cplx(b)}, 1e-14));
    for (cplx z : r) CHECK(root_residual(th::unit(5, Basis::orthonormal_mu), t, z) < 1e-14);
  }

  TEST_CASE("sobolev polynomial roots match Aberth iteration") {
    auto t = recurrence_for(th::legendre(), 40);
    for (const auto& spec :
         {SobolevSpec::from_diagonal({2.0}, {{0.0, 1.0}}), SobolevSpec::from_diagonal({cplx(0.5, 1.5)}, {{1.0, 0.5}})}) {
      auto op = sn_bordered(30, spec, t);
      auto ref = oracle::aberth_roots(oracle::to_monomial(op.rep, t));
      CHECK(close_sets(roots(op.rep, t), ref, 1e-8));
    }
  }

  TEST_CASE("residual of a non-root") {
    auto t = recurrence_for(th::legendre(), 10);
    // L_1 = x, so |p/p'| at z = 2 is 2 and the scale is max(1, 2).
    CHECK(root_residual(th::unit(1, Basis::monic_mu), t, 2.0) == doctest::Approx(1.0));
    CHECK(root_residual(th::unit(1, Basis::monic_mu), t, 0.0) == 0.0);
  }

  TEST_CASE("cluster counting") {
    std::vector<cplx> r{cplx(2.02, 0.0), cplx(0.5, 0.01), cplx(-0.99, -0.03), cplx(0, 2.05), cplx(0, 1.97), cplx(3, 3)};
    auto rep = cluster(r, {2.0, cplx(0, 2)}, 0.1, 0.05);
    REQUIRE(rep.cluster_counts.size() == 2);
    CHECK(rep.cluster_counts[0] == 1);
    CHECK(rep.cluster_counts[1] == 2);
    CHECK(rep.support_count == 2);
    REQUIRE(rep.unassigned.size() == 1);
    CHECK(rep.unassigned[0] == cplx(3, 3));
    CHECK(rep.radius == 0.1);
    CHECK(rep.support_band == 0.05);
  }

  TEST_CASE("overlapping disks are rejected") {
    CHECK_THROWS_AS(cluster({}, {2.0, 2.15}, 0.1), ConfigError);
    CHECK_THROWS_AS(cluster({}, {1.08}, 0.1, 0.05), ConfigError);
    CHECK_NOTHROW(cluster({}, {2.0, 2.25}, 0.1));
  }

  TEST_CASE("default radius") {
    CHECK(default_cluster_radius({2.0}) == doctest::Approx(0.1));
    CHECK(default_cluster_radius({cplx(0, 2), cplx(0, 3)}) == doctest::Approx(0.1));
    CHECK(default_cluster_radius({3.0, 3.5}) == doctest::Approx(0.05));
  }

  TEST_CASE("attraction persists as the radius halves") {
    auto t = recurrence_for(th::legendre(), 100);
    auto spec = SobolevSpec::from_diagonal({2.0}, {{0.0, 1.0}});
    auto z = roots(sn_bordered(80, spec, t).rep, t);
    std::vector<double> dist;
    for (double rad : {0.1, 0.05, 0.025}) CHECK(cluster(z, {2.0}, rad).cluster_counts[0] == 1);
    for (int n : {20, 40, 80}) {
      auto zn = roots(sn_bordered(n, spec, t).rep, t);
      double best = 1e300;
      for (cplx w : zn) best = std::min(best, std::abs(w - 2.0));
      dist.push_back(best);
    }
    CHECK(th::strictly_decreasing(dist));
  }
}
