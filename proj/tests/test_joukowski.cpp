#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "relasym/joukowski.hpp"
#include "relasym/verify.hpp"

using namespace relasym;

namespace {
std::vector<cplx> sample_points() {
  std::vector<cplx> pts;
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) pts.emplace_back(-3.0 + 6.0 * i / 9.0, (k < 5 ? -1.0 : 1.0) * (0.05 + 0.6 * (k % 5)));
  return pts;
}
}  // namespace

TEST_SUITE("joukowski") {
  TEST_CASE("phi at reference points") {
    CHECK(std::abs(phi(2.0) - (2.0 + std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(phi(-2.0) - (-2.0 - std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(phi(cplx(0, 1)) - cplx(0, 1.0 + std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(phi(cplx(0, -1)) - cplx(0, -1.0 - std::sqrt(2.0))) < 1e-15);
  }

  TEST_CASE("phi agrees with analytic continuation") {
    for (cplx z : {cplx(-2.0, 0.0), cplx(0.3, 0.01), cplx(0.3, -0.01), cplx(-0.9, 0.2), cplx(1.1, 0.0), cplx(-5, -3)})
      CHECK(std::abs(phi(z) - oracle::phi_by_continuation(z)) < 1e-9 * std::abs(phi(z)));
  }

  TEST_CASE("phi maps outside the unit disk and solves the Joukowski relation") {
    for (cplx z : sample_points()) {
      const cplx w = phi(z);
      CHECK(std::abs(w) > 1.0);
      CHECK(std::abs(w + 1.0 / w - 2.0 * z) < 1e-12 * std::max(1.0, std::abs(z)));
      CHECK(std::abs(phi(std::conj(z)) - std::conj(w)) < 1e-14 * std::abs(w));
      CHECK(std::abs(phi(-z) + w) < 1e-14 * std::abs(w));
    }
  }

  TEST_CASE("derivative of phi by central differences") {
    for (cplx z : {cplx(2.0), cplx(0.2, 0.7), cplx(-1.5, -0.4)}) {
      const double h = 1e-5;
      const cplx fd = (phi(z + h) - phi(z - h)) / (2 * h);
      CHECK(std::abs(phi_prime(z) - fd) < 1e-8 * std::abs(fd));
    }
  }

  TEST_CASE("points on the cut are rejected") {
    CHECK_THROWS_AS(phi(0.5), DomainError);
    CHECK_THROWS_AS(phi(cplx(-1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(cheb_transform(0, cplx(0.2, 1e-14)), DomainError);
    CHECK_NOTHROW(phi(cplx(0.2, 1e-6)));
    CHECK(cut_distance(cplx(0.3, 0.4)) == doctest::Approx(0.4));
    CHECK(cut_distance(cplx(4.0, 0.0)) == doctest::Approx(3.0));
  }

  TEST_CASE("chebyshev transform closed form against quadrature") {
    for (cplx z : {cplx(2.0), cplx(1.5), cplx(0, 2), cplx(-3.0)})
      for (int nu = 0; nu <= 10; ++nu) CHECK(std::abs(cheb_transform(nu, z) - oracle::cheb_transform_quadrature(nu, z)) < 1e-10);
  }

  TEST_CASE("chebyshev transform low orders") {
    const cplx z(0.4, 1.3);
    CHECK(std::abs(cheb_transform(0, z) - 1.0 / sqrt_z2m1(z)) < 1e-15);
    CHECK(std::abs(cheb_transform(1, z) - (z / sqrt_z2m1(z) - 1.0)) < 1e-14);
    // T_{nu+1} + T_{nu-1} = 2 x T_nu, so the transforms obey the same relation up to the moment term.
    for (int nu = 1; nu <= 8; ++nu) {
      const cplx lhs = cheb_transform(nu + 1, z) + cheb_transform(nu - 1, z);
      CHECK(std::abs(lhs - 2.0 * z * cheb_transform(nu, z)) < 1e-13);
    }
  }

  TEST_CASE("sobolev limit with one factor") {
    const cplx z(3.0), c(2.0);
    const cplx w = phi(z), v = phi(c);
    const cplx expect = (w - v) * (w - v) / (2.0 * w * (z - c));
    CHECK(std::abs(limit_sobolev(z, {{c, 1}}) - expect) < 1e-14 * std::abs(expect));
    CHECK(std::abs(limit_sobolev(z, {{c, 2}}) - expect * expect) < 1e-14 * std::abs(expect * expect));
    CHECK(std::abs(limit_sobolev(z, {}) - 1.0) < 1e-15);
  }

  TEST_CASE("modified limit includes the power of one half") {
    RationalModifier r;
    r.zeros = {{cplx(0, 2), 1}};
    const cplx z(3.0);
    const cplx expect = 0.5 * (phi(z) - phi(cplx(0, 2))) / (z - cplx(0, 2));
    CHECK(std::abs(limit_modified(z, r) - expect) < 1e-14 * std::abs(expect));
    RationalModifier q;
    q.zeros = {{cplx(0, 2), 1}};
    q.poles = {{cplx(0, 3), 1}};
    const cplx e2 = expect * (1.0 - 1.0 / (phi(z) * phi(cplx(0, 3))));
    CHECK(std::abs(limit_modified(z, q) - e2) < 1e-14 * std::abs(e2));
    CHECK(std::abs(limit_modified(z, RationalModifier{}) - 1.0) < 1e-15);
  }

  TEST_CASE("modified limit tends to one at infinity") {
    RationalModifier r;
    r.zeros = {{cplx(0, 2), 2}};
    r.poles = {{cplx(3.0), 1}};
    CHECK(std::abs(limit_modified(cplx(1e7, 3e6), r) - 1.0) < 1e-6);
  }

  TEST_CASE("kappa over tau limit") {
    RationalModifier r;
    r.zeros = {{cplx(0, 2), 1}};
    const cplx expect = -2.0 / phi(cplx(0, 2));
    CHECK(std::abs(kappa_tau_limit(r) - expect) < 1e-14 * std::abs(expect));
    r.poles = {{cplx(0, 3), 1}};
    CHECK(std::abs(kappa_tau_limit(r) - phi(cplx(0, 3)) / phi(cplx(0, 2))) < 1e-14);
  }

  TEST_CASE("factor identity holds on a grid") {
    auto pts = boundary_grid({-2.6, 2.6, -1.2, 1.2}, 100);
    REQUIRE(pts.size() == 100);
    for (cplx z : pts)
      for (cplx c : {cplx(2.0), cplx(0, 2), cplx(0.5, 1.5), cplx(-2.0)}) CHECK(factor_identity_check(z, c) < 1e-10);
  }

  TEST_CASE("limit spec multiplies its parts") {
    LimitSpec s;
    s.sobolev_factors = {{cplx(2.0), 1}};
    RationalModifier r;
    r.zeros = {{cplx(0, 2), 1}};
    s.modifier = r;
    const cplx z(-2.5);
    const cplx expect = limit_sobolev(z, s.sobolev_factors) * limit_modified(z, r);
    CHECK(std::abs(s.evaluate(z) - expect) < 1e-14 * std::abs(expect));
  }
}
