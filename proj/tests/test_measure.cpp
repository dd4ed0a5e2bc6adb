#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oracles.hpp"
#include "relasym/joukowski.hpp"
#include "relasym/zeros.hpp"

using namespace relasym;
using std::numbers::pi;

TEST_SUITE("measure") {
  TEST_CASE("chebyshev recurrence is the classical one") {
    auto t = recurrence_for(th::chebyshev(), 5);
    REQUIRE(t.nmax == 5);
    for (int k = 0; k <= 5; ++k) CHECK(std::abs(t.b[k]) < 1e-15);
    CHECK(t.a[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (int k = 2; k <= 5; ++k) CHECK(t.a[k] == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("legendre off-diagonal squares are n^2/(4n^2-1)") {
    auto t = recurrence_for(th::legendre(), 60);
    for (int n = 1; n <= 60; ++n) CHECK(t.a[n] * t.a[n] == doctest::Approx(n * n / (4.0 * n * n - 1.0)).epsilon(1e-14));
  }

  TEST_CASE("leading coefficients follow the off-diagonal") {
    for (const auto& s : {th::legendre(), th::jacobi_atom(), th::chebyshev({{2.0, 0.5}})}) {
      auto t = recurrence_for(s, 50);
      CHECK(t.tau[0] == doctest::Approx(1.0 / std::sqrt(s.total_mass())));
      for (int n = 0; n < 50; ++n) CHECK(t.tau[n + 1] / t.tau[n] == doctest::Approx(1.0 / t.a[n + 1]).epsilon(1e-14));
      for (int n = 1; n <= 50; ++n) CHECK(t.a[n] > 0.0);
    }
  }

  TEST_CASE("atom recurrence matches a 100-digit Gram-Schmidt oracle") {
    auto t = recurrence_for(th::chebyshev({{2.0, 0.5}}), 40);
    std::vector<double> a, b;
    oracle::chebyshev_atoms_recurrence({{2.0, 0.5}}, 400, 40, a, b);
    double worst = 0.0;
    for (int k = 0; k <= 40; ++k) {
      worst = std::max(worst, std::abs(t.b[k] - b[k]));
      if (k > 0) worst = std::max(worst, std::abs(t.a[k] - a[k]));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("jacobi plus atom monic polynomials match the moment oracle") {
    auto s = th::jacobi_atom();
    auto t = recurrence_for(s, 30);
    auto G = oracle::gram_modified(s, RationalModifier{}, 16);
    for (int n = 1; n <= 15; ++n) {
      auto ref = oracle::monic_op(G, n);
      auto ours = oracle::to_monomial(th::unit(n, Basis::monic_mu), t);
      CHECK(oracle::coeff_distance(ours, ref) < 1e-10);
    }
  }

  TEST_CASE("recurrence coefficients drift toward the Nevai limits") {
    for (const auto& s : {th::legendre(), th::jacobi_atom(), th::chebyshev({{2.0, 0.5}})}) {
      auto t = recurrence_for(s, 120);
      CHECK(std::abs(t.a[120] - 0.5) < std::abs(t.a[60] - 0.5) + 1e-12);
      CHECK(std::abs(t.b[120]) < std::abs(t.b[60]) + 1e-12);
    }
  }

  TEST_CASE("gauss rules for the classical weights") {
    auto tc = recurrence_for(th::chebyshev(), 10);
    auto r = gauss_rule(tc, 3);
    REQUIRE(r.size() == 3);
    for (int k = 1; k <= 3; ++k) {
      const double x = std::cos((2 * k - 1) * pi / 6.0);
      bool found = false;
      for (int i = 0; i < 3; ++i) found = found || std::abs(r.nodes[i] - x) < 1e-14;
      CHECK(found);
      CHECK(r.weights[k - 1] == doctest::Approx(pi / 3.0).epsilon(1e-14));
    }
    auto tl = recurrence_for(th::legendre(), 10);
    auto q = gauss_rule(tl, 2);
    CHECK(q.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(q.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(q.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
    double sum = 0.0;
    for (double w : gauss_rule(recurrence_for(th::jacobi_atom(), 40), 30).weights) sum += w;
    CHECK(sum == doctest::Approx(th::jacobi_atom().continuous_mass()).epsilon(1e-13));
  }

  TEST_CASE("atom rule integrates x^4 like adaptive quadrature") {
    auto s = th::chebyshev({{2.0, 0.5}});
    auto r = gauss_rule(recurrence_for(s, 40), 20);
    double v = 0.0;
    for (int i = 0; i < r.size(); ++i) v += r.weights[i] * std::pow(r.nodes[i], 4);
    for (const auto& a : r.atoms) v += a.mass * std::pow(a.location, 4);
    auto f = [](double th) { return std::pow(std::cos(th), 4); };
    const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi, 20, 1e-15) + 0.5 * 16.0;
    CHECK(std::abs(v - ref) < 1e-12);
  }

  TEST_CASE("gauss rule refuses more nodes than the table holds") {
    auto t = recurrence_for(th::legendre(), 5);
    CHECK_THROWS_AS(gauss_rule(t, 6), ConfigError);
  }

  TEST_CASE("monic chebyshev jets") {
    auto t = recurrence_for(th::chebyshev(), 10);
    CHECK(eval_jet(t, 2, 2.0, 0, Basis::monic_mu)[0].real() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(eval_jet(t, 3, 0.0, 1, Basis::monic_mu)[1].real() == doctest::Approx(-0.75).epsilon(1e-15));
  }

  TEST_CASE("atom jets match the oracle polynomial") {
    auto s = th::chebyshev({{2.0, 0.5}});
    auto t = recurrence_for(s, 20);
    auto coeffs = oracle::monic_op(oracle::gram_modified(s, RationalModifier{}, 10), 10);
    const oracle::mpc z(3);
    std::vector<oracle::mpc> p = coeffs;
    auto jet = eval_jet(t, 10, 3.0, 2, Basis::monic_mu);
    for (int d = 0; d <= 2; ++d) {
      oracle::mpc v = 0;
      for (size_t k = p.size(); k-- > 0;) v = v * z + p[k];
      const cplx ref = oracle::to_double(v);
      CHECK(std::abs(jet[d] - ref) < 1e-11 * std::abs(ref));
      std::vector<oracle::mpc> dp;
      for (size_t k = 1; k < p.size(); ++k) dp.push_back(oracle::mpc(static_cast<int>(k)) * p[k]);
      p = dp;
    }
  }

  TEST_CASE("monic and orthonormal evaluations agree") {
    auto t = recurrence_for(th::jacobi_atom(), 60);
    for (int n : {0, 1, 7, 30, 60})
      for (cplx z : {cplx(3.0), cplx(0.3, 0.2), cplx(-1.2, 0.7), cplx(0.0, 2.0)}) {
        const cplx L = eval_jet(t, n, z, 0, Basis::monic_mu)[0];
        const cplx l = eval_jet(t, n, z, 0, Basis::orthonormal_mu)[0];
        CHECK(std::abs(l - t.tau[n] * L) <= 1e-12 * std::abs(l));
      }
  }

  TEST_CASE("inner products of basis polynomials") {
    auto tc = recurrence_for(th::chebyshev(), 20);
    auto rule = gauss_rule(tc, 10);
    auto l3 = th::unit(3, Basis::orthonormal_mu), l5 = th::unit(5, Basis::orthonormal_mu);
    CHECK(std::abs(inner_mu(l3, l3, rule, tc) - 1.0) < 1e-14);
    CHECK(std::abs(inner_mu(l3, l5, rule, tc)) < 1e-14);
    CHECK_THROWS_AS(inner_mu(l5, l5, gauss_rule(tc, 5), tc), ConfigError);
    auto ta = recurrence_for(th::chebyshev({{2.0, 0.5}}), 20);
    auto L4 = th::unit(4, Basis::monic_mu);
    const double expect = 1.0 / (ta.tau[4] * ta.tau[4]);
    CHECK(std::abs(inner_mu(L4, L4, gauss_rule(ta, 10), ta) - expect) < 1e-12 * expect);
  }

  TEST_CASE("monic polynomials are orthogonal on all bundled measures") {
    for (const auto& s : {th::legendre(), th::jacobi_atom(), th::chebyshev({{2.0, 0.5}})}) {
      auto t = recurrence_for(s, 60);
      auto rule = gauss_rule(t, 45);
      NodalBasis nb(t, rule, 40);
      for (int n = 1; n <= 40; ++n)
        for (int k = 0; k < n; ++k) {
          // rounding scale: sum of |w L_n L_k| over nodes and atoms
          double scale = 0.0;
          for (int i = 0; i < nb.rows(); ++i) scale += nb.w()[i] * std::abs(nb.l(i, n) * nb.l(i, k));
          scale /= t.tau[n] * t.tau[k];
          auto Ln = th::unit(n, Basis::monic_mu), Lk = th::unit(k, Basis::monic_mu);
          CHECK(std::abs(inner_mu(Ln, Lk, rule, t)) <= 1e-9 * scale);
        }
    }
  }

  TEST_CASE("zeros of pure-weight polynomials lie in (-1,1) and interlace") {
    for (const auto& s : {th::legendre(), th::chebyshev()}) {
      auto t = recurrence_for(s, 30);
      for (int n : {5, 12, 25}) {
        auto a = roots(th::unit(n, Basis::monic_mu), t);
        auto b = roots(th::unit(n + 1, Basis::monic_mu), t);
        for (auto z : a) {
          CHECK(std::abs(z.imag()) < 1e-12);
          CHECK(std::abs(z.real()) < 1.0);
        }
        for (int i = 0; i < n; ++i) {
          CHECK(b[i].real() < a[i].real());
          CHECK(a[i].real() < b[i + 1].real());
        }
      }
    }
  }

  TEST_CASE("ratio of consecutive monic polynomials approaches phi/2") {
    auto t = recurrence_for(th::legendre(), 50);
    std::vector<double> err;
    for (int n : {10, 20, 40})
      err.push_back(std::abs(eval_jet(t, n + 1, 3.0, 0, Basis::monic_mu)[0] / eval_jet(t, n, 3.0, 0, Basis::monic_mu)[0] -
                             phi(3.0) / 2.0));
    CHECK(th::strictly_decreasing(err));
  }

  TEST_CASE("logarithmic derivative at n = 200 on the chebyshev weight") {
    auto t = recurrence_for(th::chebyshev(), 200);
    auto j = eval_jet(t, 200, 2.0, 1, Basis::orthonormal_mu);
    CHECK(std::abs(j[1] / (200.0 * j[0]) - 1.0 / std::sqrt(3.0)) < 0.05);
  }

  TEST_CASE("invalid measures are rejected") {
    BaseMeasureSpec s;
    s.mass_points = {{0.5, 1.0}};
    CHECK_THROWS_AS(recurrence_for(s, 10), ConfigError);
    s.mass_points = {{2.0, -1.0}};
    CHECK_THROWS_AS(recurrence_for(s, 10), ConfigError);
    BaseMeasureSpec j;
    j.kind = WeightKind::jacobi;
    j.alpha = -1.5;
    CHECK_THROWS_AS(recurrence_for(j, 10), ConfigError);
    CHECK_THROWS_AS(recurrence_for(th::legendre(), 0), ConfigError);
  }
}
