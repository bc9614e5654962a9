#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/numerics/parallel.hpp"
#include "fracperiodic/numerics/quadrature.hpp"
#include "fracperiodic/numerics/special.hpp"
#include "fracperiodic/numerics/trig_grid.hpp"
#include "oracles.hpp"

using namespace fracperiodic;
using namespace fracperiodic::numerics;

TEST_CASE("bessel_k matches the standard library") {
  for (double nu : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.25, 1.5}) {
    for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.99, 2.0, 2.01, 5.0, 20.0, 80.0}) {
      const double ref = std::cyl_bessel_k(nu, x);
      CHECK(bessel_k(nu, x) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel_k pair satisfies the recurrence") {
  // K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu
  for (double x : {0.3, 1.5, 4.0}) {
    const double nu = 0.4;
    const double k0 = bessel_k(nu - 1.0, x), k1 = bessel_k(nu, x), k2 = bessel_k(nu + 1.0, x);
    CHECK(k2 == doctest::Approx(k0 + 2.0 * nu / x * k1).epsilon(1e-12));
  }
}

TEST_CASE("bessel_k half order closed form and underflow") {
  for (double x : {0.01, 1.0, 7.0}) {
    CHECK(bessel_k(0.5, x) == doctest::Approx(std::sqrt(oracle::pi / (2 * x)) * std::exp(-x)).epsilon(1e-13));
  }
  CHECK(bessel_k(0.3, 701.0) == 0.0);
}

TEST_CASE("scaled_bessel_k limit at zero") {
  for (double nu : {0.2, 0.5, 0.8}) {
    CHECK(scaled_bessel_k(nu, 0.0) == doctest::Approx(std::pow(2.0, nu - 1) * std::tgamma(nu)).epsilon(1e-13));
    for (double x : {1e-8, 0.3, 3.0}) {
      CHECK(scaled_bessel_k(nu, x) == doctest::Approx(std::pow(x, nu) * std::cyl_bessel_k(nu, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("hurwitz_zeta against direct summation and the Riemann zeta") {
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(oracle::pi * oracle::pi / 6).epsilon(1e-13));
  CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(oracle::pi, 4) / 90).epsilon(1e-13));
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  CHECK(hurwitz_zeta(2.0, 0.5) == doctest::Approx(3 * oracle::pi * oracle::pi / 6).epsilon(1e-13));
  double direct = 0.0;
  for (int k = 200000; k >= 0; --k) direct += std::pow(3.7 + k, -2.5);
  direct += std::pow(3.7 + 200000.5, -1.5) / 1.5;  // integral tail
  CHECK(hurwitz_zeta(2.5, 3.7) == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("reciprocal_gamma_1p") {
  for (double x : {-0.4, -1e-9, 0.0, 1e-9, 0.3, 0.9}) {
    CHECK(reciprocal_gamma_1p(x) == doctest::Approx(1.0 / std::tgamma(1.0 + x)).epsilon(1e-14));
  }
}

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n-1") {
  const QuadratureRule r = gauss_legendre(6, -1.0, 2.0);
  const double got = r.integrate([](double x) { return std::pow(x, 11) - 3 * x * x; });
  CHECK(got == doctest::Approx((std::pow(2.0, 12) - 1.0) / 12.0 - 9.0).epsilon(1e-13));
}

TEST_CASE("gauss_jacobi integrates the weight exactly") {
  for (double alpha : {-0.5, 0.0, 0.5}) {
    for (double beta : {-0.6, -0.2, 0.4}) {
      const QuadratureRule r = gauss_jacobi(10, alpha, beta);
      // int_{-1}^{1} (1-x)^alpha (1+x)^beta x^2 dx via the Beta function
      const double mass = std::pow(2.0, alpha + beta + 1) * std::tgamma(alpha + 1) * std::tgamma(beta + 1) /
                          std::tgamma(alpha + beta + 2);
      CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(mass).epsilon(1e-12));
      const double m1 = mass * (beta - alpha) / (alpha + beta + 2);
      CHECK(r.integrate([](double x) { return x; }) == doctest::Approx(m1).epsilon(1e-11));
    }
  }
}

TEST_CASE("gauss_jacobi_left and the graded weighted rule") {
  const double beta = -0.4;
  const QuadratureRule r = gauss_jacobi_left(12, 1.0, 3.0, beta);
  // int_1^3 (y-1)^beta y dy
  const double exact = std::pow(2.0, beta + 2) / (beta + 2) + std::pow(2.0, beta + 1) / (beta + 1);
  CHECK(r.integrate([](double y) { return y; }) == doctest::Approx(exact).epsilon(1e-12));

  GradedRuleSpec spec;
  spec.alpha = 0.5;
  spec.y_max = 30.0;
  spec.max_width = 2.0;
  const QuadratureRule g = graded_weighted_rule(spec);
  // int_0^30 y^{1/2} e^{-y} dy = gamma(3/2) - upper tail
  const double want = std::tgamma(1.5) - std::exp(-30.0) * (std::sqrt(30.0) + 0.5 / std::sqrt(30.0));
  CHECK(g.integrate([](double y) { return std::exp(-y); }) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("graded_panel_edges cover the interval monotonically") {
  const auto e = graded_panel_edges(10.0, 1e-3, 1.0);
  REQUIRE(e.size() > 2);
  CHECK(e.front() == 0.0);
  CHECK(e.back() == doctest::Approx(10.0));
  for (std::size_t i = 1; i < e.size(); ++i) {
    CHECK(e[i] > e[i - 1]);
    CHECK(e[i] - e[i - 1] <= 1.0 + 1e-12);
  }
}

TEST_CASE("tanh_sinh handles endpoint singularities") {
  const double got = integrate_tanh_sinh([](double x) { return std::pow(x, -0.7); }, 0.0, 1.0, 1e-12);
  CHECK(got == doctest::Approx(1.0 / 0.3).epsilon(1e-10));
  const double log_int = integrate_tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12);
  CHECK(log_int == doctest::Approx(-1.0).epsilon(1e-11));
  CHECK(integrate_tanh_sinh([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("TrigGrid round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int order : {1, 5, 16, 33}) {
    for (int points : {2 * order + 2, 2 * order + 7, 4 * order + 4}) {
      std::vector<double> c(order + 1), s(order + 1, 0.0);
      for (int m = 0; m <= order; ++m) {
        c[m] = U(rng);
        if (m > 0) s[m] = U(rng);
      }
      const TrigGrid grid(order, points);
      const auto samples = grid.sample(c, s);
      // direct synthesis
      for (int j = 0; j < points; ++j) {
        double v = c[0];
        for (int m = 1; m <= order; ++m) {
          const double t = 2 * oracle::pi * m * j / points;
          v += c[m] * std::cos(t) + s[m] * std::sin(t);
        }
        CHECK(samples[j] == doctest::Approx(v).epsilon(1e-12));
      }
      std::vector<double> c2(order + 1), s2(order + 1);
      grid.analyze(samples, c2, s2);
      for (int m = 0; m <= order; ++m) {
        CHECK(c2[m] == doctest::Approx(c[m]).epsilon(1e-12).scale(1.0));
        CHECK(s2[m] == doctest::Approx(s[m]).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("parallel_for visits every index once") {
  for (int jobs : {1, 3, 8}) {
    std::vector<int> hits(50, 0);
    parallel_for(50, jobs, [&](int i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}
