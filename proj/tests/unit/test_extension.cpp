#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/extension.hpp"
#include "fracperiodic/spectral.hpp"
#include "oracles.hpp"

using namespace fracperiodic;
using oracle::pi;

namespace {

const double two_pi = 2.0 * pi;

PeriodicFunction sin_mode(int m, double c = 1.0) { return PeriodicFunction::mode(two_pi, 4, m, 0.0, c); }
PeriodicFunction cos_mode(int m, double c = 1.0) { return PeriodicFunction::mode(two_pi, 4, m, c, 0.0); }

/// (y^a J')' by a Richardson-extrapolated five-point difference of the weighted derivative.
double weighted_flux_derivative(const BesselProfile& p, double y, double h) {
  const auto g = [&](double t) { return p.weighted_derivative(t); };
  const auto d = [&](double k) { return (-g(y + 2 * k) + 8 * g(y + k) - 8 * g(y - k) + g(y - 2 * k)) / (12 * k); };
  return (16 * d(h / 2) - d(h)) / 15;
}

}  // namespace

TEST_SUITE("BesselProfile") {
  TEST_CASE("value against the standard library") {
    for (double s : {0.2, 0.5, 0.8}) {
      for (int m : {1, 3}) {
        const BesselProfile p = BesselProfile::for_mode(FracOrder(s), m, two_pi);
        CHECK(p.value(0.0) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(p.value(1e-12) == doctest::Approx(1.0).epsilon(1e-3));
        for (double y : {0.01, 0.5, 2.0, 7.0}) {
          CHECK(p.value(y) == doctest::Approx(oracle::bessel_profile(s, m, y)).epsilon(1e-12));
        }
      }
    }
    // K_{1/2} closed form: J(y) = e^{-m y}
    const BesselProfile half = BesselProfile::for_mode(FracOrder(0.5), 2, two_pi);
    CHECK(half.value(0.7) == doctest::Approx(std::exp(-1.4)).epsilon(1e-14));
    CHECK(half.derivative(0.7) == doctest::Approx(-2 * std::exp(-1.4)).epsilon(1e-13));
  }

  TEST_CASE("ODE residual on [0.1, 10]") {
    for (double s : {0.25, 0.5, 0.75}) {
      const FracOrder o(s);
      for (int m : {1, 2, 4}) {
        const BesselProfile p = BesselProfile::for_mode(o, m, two_pi);
        for (double y = 0.1; y <= 10.0; y += 0.7) {
          // J'' + (a/y) J' - m^2 J = y^{-a} [(y^a J')' - m^2 y^a J]
          const double lhs = weighted_flux_derivative(p, y, 4e-3) * std::pow(y, -o.a());
          CHECK(std::abs(lhs - m * m * p.value(y)) <= 1e-8);
        }
      }
    }
  }

  TEST_CASE("Neumann limit") {
    for (double s : {0.25, 0.5, 0.75}) {
      const FracOrder o(s);
      for (int m : {1, 2, 3}) {
        const BesselProfile p = BesselProfile::for_mode(o, m, two_pi);
        const double want = -o.c_s() * std::pow(m, 2 * s);
        CHECK(p.weighted_derivative_limit() == doctest::Approx(want).epsilon(1e-12));
        // y^a J'(y) = limit + O(y^{2-2s}); one Richardson step at y = 1e-6
        const double y = 1e-6, q = std::pow(2.0, 2 - 2 * s);
        const double extrapolated = (q * p.weighted_derivative(y / 2) - p.weighted_derivative(y)) / (q - 1);
        CHECK(extrapolated == doctest::Approx(want).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("normalization") {
    const FracOrder o(0.3);
    const BesselProfile p(o, 2.5);
    CHECK(p.value(0.4) == doctest::Approx(p.normalization() * std::pow(0.4, 0.3) * std::cyl_bessel_k(0.3, 1.0)).epsilon(1e-12));
    CHECK(p.value(800.0) == 0.0);
  }
}

TEST_SUITE("Poisson kernel") {
  TEST_CASE("unit mass") {
    for (double s : {0.25, 0.5, 0.75}) {
      for (double y : {0.1, 1.0, 10.0}) CHECK(poisson_kernel_mass(FracOrder(s), y) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("s = 1/2 is the classical kernel") {
    const double x = 0.7, y = 0.3;
    CHECK(poisson_kernel(FracOrder(0.5), x, y) == doctest::Approx(y / (pi * (x * x + y * y))).epsilon(1e-14));
  }
}

TEST_SUITE("ExtensionField") {
  TEST_CASE("trace, periodicity and parity") {
    std::mt19937_64 rng(1);
    for (double s : {0.3, 0.7}) {
      const FracOrder o(s);
      const PeriodicFunction u = oracle::random_function(rng, 3.0, 4);
      const PeriodicFunction v = oracle::random_function(rng, 3.0, 4, true);
      for (const auto& make : {extend_bessel, extend_poisson}) {
        const ExtensionField U = make(u, o, {});
        const ExtensionField V = make(v, o, {});
        for (double x : PeriodicFunction::nodes(3.0, 10)) {
          CHECK(U(x, 0.0) == doctest::Approx(u(x)).epsilon(1e-8));
          CHECK(U(x + 3.0, 0.4) == doctest::Approx(U(x, 0.4)).epsilon(1e-12));
          CHECK(V(-x, 0.4) == doctest::Approx(-V(x, 0.4)).scale(1.0).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("examples") {
    const FracOrder half(0.5);
    const ExtensionField Ub = extend_bessel(sin_mode(1), half);
    for (double y : {0.0, 0.3, 1.0, 4.0}) {
      CHECK(Ub(pi / 2, y) == doctest::Approx(std::exp(-y)).epsilon(1e-12));
    }
    const ExtensionField Up = extend_poisson(sin_mode(1), half);
    for (double y : {0.05, 0.5, 1.0, 3.0}) {
      for (double x : {0.2, 1.3, 4.0}) CHECK(Up(x, y) == doctest::Approx(std::exp(-y) * std::sin(x)).scale(1.0).epsilon(1e-8));
    }
    CHECK(Ub(0.8, 1.0) == doctest::Approx(Up(0.8, 1.0)).epsilon(1e-6));
    for (const auto& make : {extend_bessel, extend_poisson}) {
      const ExtensionField c = make(PeriodicFunction::constant(two_pi, 3, 2.5), FracOrder(0.35), {});
      for (double y : {0.0, 0.5, 5.0}) CHECK(c(1.0, y) == doctest::Approx(2.5).epsilon(1e-10));
      CHECK(make(PeriodicFunction::constant(two_pi, 3, 1.0), FracOrder(0.35), {})(2.0, 0.7) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("s = 1/2 closed form on random functions") {
    std::mt19937_64 rng(2);
    const double T = 4.0;
    const PeriodicFunction u = oracle::random_function(rng, T, 5);
    const ExtensionField Ub = extend_bessel(u, FracOrder(0.5));
    const ExtensionField Up = extend_poisson(u, FracOrder(0.5));
    for (double y : {0.1, 0.6, 2.0}) {
      const PeriodicFunction damped = u.map_modes([&](int m) { return std::exp(-two_pi * m / T * y); });
      for (double x : {0.0, 1.1, 2.9}) {
        CHECK(Ub(x, y) == doctest::Approx(damped(x)).scale(1.0).epsilon(1e-8));
        CHECK(Up(x, y) == doctest::Approx(damped(x)).scale(1.0).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("both constructions against the standard-library series") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> X(0.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
      const double s = 0.15 + 0.7 * X(rng);
      const PeriodicFunction u = oracle::random_function(rng, 5.0, 4);
      const FracOrder o(s);
      const ExtensionField Ub = extend_bessel(u, o), Up = extend_poisson(u, o);
      for (int k = 0; k < 4; ++k) {
        const double x = 5.0 * X(rng), y = 0.5;
        const double want = oracle::extension_value(u, s, x, y);
        CHECK(Ub(x, y) == doctest::Approx(want).scale(1.0).epsilon(1e-10));
        CHECK(Up(x, y) == doctest::Approx(want).scale(1.0).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("weighted harmonicity at interior points") {
    std::mt19937_64 rng(8);
    const PeriodicFunction u = oracle::random_function(rng, 4.0, 5);
    for (double s : {0.2, 0.5, 0.8}) {
      const FracOrder o(s);
      for (const auto& make : {extend_bessel, extend_poisson}) {
        const ExtensionField U = make(u, o, {});
        const double h = 1e-4;
        for (double y : {0.3, 1.0, 2.0}) {
          for (double x : {0.4, 1.9, 3.3}) {
            const double flux_x = std::pow(y, o.a()) * (U.dx(x + h, y) - U.dx(x - h, y)) / (2 * h);
            const double flux_y = (U.weighted_dy(x, y + h) - U.weighted_dy(x, y - h)) / (2 * h);
            CHECK(std::abs(flux_x + flux_y) <= 1e-6);
          }
        }
      }
    }
  }

  TEST_CASE("derivatives against finite differences") {
    std::mt19937_64 rng(4);
    const PeriodicFunction u = oracle::random_function(rng, 3.0, 4);
    for (double s : {0.3, 0.7}) {
      const FracOrder o(s);
      for (const auto& make : {extend_bessel, extend_poisson}) {
        const ExtensionField U = make(u, o, {});
        const double x = 0.9, y = 0.6, h = 1e-5;
        CHECK(U.dx(x, y) == doctest::Approx((U(x + h, y) - U(x - h, y)) / (2 * h)).scale(1.0).epsilon(1e-6));
        CHECK(U.dy(x, y) == doctest::Approx((U(x, y + h) - U(x, y - h)) / (2 * h)).scale(1.0).epsilon(1e-6));
        CHECK(U.weighted_dy(x, y) == doctest::Approx(std::pow(y, o.a()) * U.dy(x, y)).epsilon(1e-12));
      }
    }
  }
}

TEST_SUITE("dirichlet_to_neumann") {
  TEST_CASE("examples") {
    const FracOrder half(0.5), quarter(0.25);
    for (const auto& make : {extend_bessel, extend_poisson}) {
      CHECK(coefficient_distance(dirichlet_to_neumann(make(sin_mode(1), half, {})), sin_mode(1)) < 1e-6);
      CHECK(dirichlet_to_neumann(make(PeriodicFunction::constant(two_pi, 3, 2.0), half, {})).coefficient_norm() < 1e-6);
      CHECK(coefficient_distance(dirichlet_to_neumann(make(sin_mode(3), quarter, {})), sin_mode(3, std::sqrt(3.0))) < 1e-6);
    }
    CHECK(coefficient_distance(dirichlet_to_neumann(extend_bessel(sin_mode(1), half)), sin_mode(1)) < 1e-12);
  }
}

TEST_SUITE("extension_energy") {
  TEST_CASE("examples") {
    CHECK(extension_energy(extend_bessel(sin_mode(1), FracOrder(0.5))) == doctest::Approx(pi).epsilon(1e-8));
    CHECK(extension_energy(extend_bessel(PeriodicFunction::constant(two_pi, 3, 1.0), FracOrder(0.5))) == 0.0);
    const FracOrder o(0.3);
    const PeriodicFunction u = sin_mode(1) + cos_mode(2, 0.5);
    CHECK(extension_energy(extend_bessel(u, o)) == doctest::Approx(gagliardo_energy(u, o) / o.d_s()).epsilon(1e-6));
  }

  TEST_CASE("trace-energy identity on random functions") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> X(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const FracOrder o(0.1 + 0.8 * X(rng));
      const PeriodicFunction u = oracle::random_function(rng, 1.0 + 6.0 * X(rng), 1 + trial % 6);
      CHECK(extension_energy(extend_bessel(u, o)) * o.d_s() == doctest::Approx(spectral_energy(u, o)).epsilon(1e-6));
    }
  }

  TEST_CASE("minimality against compactly supported perturbations") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> X(-1.0, 1.0);
    const double T = 4.0;
    for (double s : {0.3, 0.6}) {
      const FracOrder o(s);
      const PeriodicFunction u = oracle::random_function(rng, T, 3);
      const ExtensionField U = extend_bessel(u, o);
      const double Y = 3.0;
      const numerics::QuadratureRule rule = U.y_rule(o.a(), Y);
      const int nx = 64;
      for (int trial = 0; trial < 5; ++trial) {
        // phi = c sin(k w x + p) y^2 (Y - y)^2 on [0, Y], zero above
        const double c = 0.2 * X(rng), p = pi * X(rng);
        const int k = 1 + trial % 3;
        const double w = two_pi * k / T;
        double base = 0.0, perturbed = 0.0, cross = 0.0;
        for (int i = 0; i < nx; ++i) {
          const double x = T * i / nx;
          for (std::size_t j = 0; j < rule.size(); ++j) {
            const double y = rule.nodes[j], wt = rule.weights[j] * T / nx;
            const double b = y * y * (Y - y) * (Y - y);
            const double db = 2 * y * (Y - y) * (Y - 2 * y);
            const double px = c * w * std::cos(w * x + p) * b;
            const double py = c * std::sin(w * x + p) * db;
            const double ux = U.dx(x, y), uy = U.dy(x, y);
            base += wt * (ux * ux + uy * uy);
            perturbed += wt * ((ux + px) * (ux + px) + (uy + py) * (uy + py));
            cross += wt * (ux * px + uy * py);
          }
        }
        CHECK(perturbed > base);
        CHECK(std::abs(cross) < 1e-6 * base);
      }
    }
  }

  TEST_CASE("tail guard") {
    // truncating far below the decay length leaves a visible remainder
    CHECK_THROWS_AS(extension_energy(extend_bessel(sin_mode(1), FracOrder(0.5)), 0.5), TailNotConverged);
  }
}
