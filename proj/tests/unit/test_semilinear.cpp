#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/semilinear.hpp"
#include "fracperiodic/spectral.hpp"
#include "oracles.hpp"

using namespace fracperiodic;
using oracle::pi;

namespace {

const DoubleWell quartic = DoubleWell::quartic();

const SemilinearSolution& reference_solution(double s) {
  static std::map<double, SemilinearSolution> cache;
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, minimize_energy(8.0, FracOrder(s), quartic)).first;
  return it->second;
}

}  // namespace

TEST_SUITE("minimize_energy") {
  TEST_CASE("T = 8, s = 1/2 carries a nonconstant odd solution") {
    const SemilinearSolution& sol = reference_solution(0.5);
    CHECK(sol.classification == Classification::nonconstant);
    CHECK(sol.amplitude > 0.0);
    CHECK(sol.amplitude < 1.0);
    CHECK(sol.residual <= 1e-9);
    CHECK(sol.u.odd());
    CHECK(sol.u(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sol.u(2.0) > 0.0);
    CHECK(sol.monotone_between_extrema);
    CHECK(sol.truncation_change >= 0.0);
    CHECK(sol.truncation_change < 1e-8);
    CHECK(semilinear_residual_norm(sol.u, FracOrder(0.5), quartic) == doctest::Approx(sol.residual).epsilon(1e-6));
    CHECK(sol.energy == doctest::Approx(energy_functional(sol.u, FracOrder(0.5), quartic)).epsilon(1e-12));
  }

  TEST_CASE("zero multistarts return the trivial solution") {
    for (double s : {0.3, 0.5, 0.8}) {
      for (double T : {3.0, 8.0}) {
        SolveConfig cfg;
        cfg.multistarts = 0;
        const SemilinearSolution sol = minimize_energy(T, FracOrder(s), quartic, cfg);
        CHECK(sol.classification == Classification::trivial);
        CHECK(sol.amplitude == 0.0);
        CHECK(sol.energy == doctest::Approx(T / 8).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("T = 4, s = 1/2 is trivial across 8 multistarts") {
    SolveConfig cfg;
    cfg.multistarts = 8;
    const SemilinearSolution sol = minimize_energy(4.0, FracOrder(0.5), quartic, cfg);
    CHECK(sol.classification == Classification::trivial);
    CHECK(sol.amplitude <= 1e-6);
  }

  TEST_CASE("even class is the quarter-period shift of the odd class") {
    SolveConfig cfg;
    cfg.symmetry = Symmetry::even;
    const SemilinearSolution even = minimize_energy(8.0, FracOrder(0.5), quartic, cfg);
    const SemilinearSolution& odd = reference_solution(0.5);
    REQUIRE(even.classification == Classification::nonconstant);
    CHECK(even.u(0.0) >= 0.0);
    CHECK(even.u(4.0) <= 0.0);
    CHECK(even.residual <= 1e-9);
    CHECK(even.variational_energy == doctest::Approx(odd.variational_energy).epsilon(1e-9));
    for (double x : {0.3, 1.7, 5.2}) CHECK(even.u(x) == doctest::Approx(odd.u(x + 2.0)).scale(1.0).epsilon(1e-8));
  }

  TEST_CASE("configuration validation") {
    SolveConfig cfg;
    cfg.order = 4;
    CHECK_THROWS_AS(minimize_energy(8.0, FracOrder(0.5), quartic, cfg), InvalidArgument);
    cfg = {};
    cfg.newton_tol = 0.0;
    CHECK_THROWS_AS(minimize_energy(8.0, FracOrder(0.5), quartic, cfg), InvalidArgument);
    CHECK_THROWS_AS(minimize_energy(-1.0, FracOrder(0.5), quartic), InvalidArgument);
  }
}

TEST_SUITE("solution properties") {
  TEST_CASE("strict bound, energy below the trivial one, oracle residual") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> X(0.0, 8.0);
    for (double s : {0.3, 0.5, 0.7}) {
      const FracOrder o(s);
      const SemilinearSolution& sol = reference_solution(s);
      REQUIRE(sol.classification == Classification::nonconstant);
      for (double v : sol.u.samples(512)) CHECK(std::abs(v) < 1.0);
      // the functional the solver descends on
      CHECK(sol.variational_energy <= quartic(0.0) * 8.0 / 2);
      for (int k = 0; k < 8; ++k) {
        const double x = X(rng);
        const double r = singular_integral_oracle(sol.u, o, x, 1e-9) + quartic.d1(sol.u(x));
        CHECK(std::abs(r) <= 1e-5);
      }
    }
  }

  TEST_CASE("odd solution is unique across multistarts") {
    for (double s : {0.3, 0.5, 0.7}) {
      const SemilinearSolution& ref = reference_solution(s);
      for (std::uint64_t seed : {1u, 99u}) {
        SolveConfig cfg;
        cfg.seed = seed;
        cfg.multistarts = 10;
        const SemilinearSolution other = minimize_energy(8.0, FracOrder(s), quartic, cfg);
        CHECK(coefficient_distance(other.u, ref.u) <= 1e-6);
      }
    }
  }
}

TEST_SUITE("newton_refine") {
  TEST_CASE("exact solution is returned unchanged") {
    const SemilinearSolution& ref = reference_solution(0.5);
    const SemilinearSolution again = newton_refine(ref.u, FracOrder(0.5), quartic);
    CHECK(again.newton_iterations == 0);
    CHECK(coefficient_distance(again.u, ref.u) == 0.0);
  }

  TEST_CASE("perturbed solution converges quadratically") {
    const SemilinearSolution& ref = reference_solution(0.5);
    std::mt19937_64 rng(12);
    const PeriodicFunction noise = oracle::random_function(rng, 8.0, 6, true).with_order(ref.u.order());
    const PeriodicFunction start = ref.u + (1e-3 / noise.l2_norm()) * noise;
    const SemilinearSolution sol = newton_refine(start, FracOrder(0.5), quartic, 1e-10);
    CHECK(sol.newton_iterations <= 5);
    CHECK(sol.residual <= 1e-10);
    CHECK(coefficient_distance(sol.u, ref.u) <= 1e-9);
  }

  TEST_CASE("convergence order estimate") {
    const SemilinearSolution& ref = reference_solution(0.5);
    const PeriodicFunction start = ref.u + 0.08 * PeriodicFunction::mode(8.0, ref.u.order(), 3, 0.0, 1.0).as_odd();
    const SemilinearSolution sol = newton_refine(start, FracOrder(0.5), quartic, 1e-13);
    const auto& h = sol.residual_history;
    REQUIRE(h.size() >= 3);
    // last triple still above the rounding floor
    std::size_t k = h.size() - 1;
    while (k >= 2 && h[k] < 1e-12) --k;
    REQUIRE(k >= 2);
    const double order = std::log(h[k] / h[k - 1]) / std::log(h[k - 1] / h[k - 2]);
    MESSAGE("observed Newton order " << order);
    CHECK(order >= 1.8);
  }

  TEST_CASE("singular Jacobian at the bifurcation point") {
    // u = 0 at T = 2 pi, s = 1/2: the Jacobian has sin x in its kernel
    const PeriodicFunction zero = PeriodicFunction::zero(2 * pi, 8).as_odd();
    const PeriodicFunction start = zero + 1e-3 * PeriodicFunction::mode(2 * pi, 8, 2, 0.0, 1.0).as_odd();
    CHECK_THROWS_AS(newton_refine(start, FracOrder(0.5), quartic), SingularJacobian);
  }
}

TEST_SUITE("find_min_period") {
  TEST_CASE("quartic, s = 1/2 stays below 2 pi") {
    const double tol = 1e-2;
    const MinPeriodResult r = find_min_period(FracOrder(0.5), quartic, 9.0, tol);
    CHECK(r.bound == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(r.estimate <= r.bound + tol);
    CHECK(r.trivial_below <= r.estimate);
    CHECK(r.estimate - r.trivial_below <= tol);
  }

  TEST_CASE("scaled quartic halves the threshold") {
    const double tol = 1e-2;
    const DoubleWell F = DoubleWell::quartic(4.0);
    CHECK(-F.d2(0.0) == doctest::Approx(4.0));
    const MinPeriodResult r = find_min_period(FracOrder(0.5), F, 4.5, tol);
    CHECK(r.bound == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(r.estimate <= pi + tol);
    CHECK(r.estimate <= r.bound + tol);
  }

  TEST_CASE("near s = 1 the estimate sits close to 2 pi (reported only)") {
    const MinPeriodResult r = find_min_period(FracOrder(0.95), quartic, 9.0, 1e-2);
    MESSAGE("s = 0.95 estimate " << r.estimate << ", relative distance to 2 pi "
                                 << std::abs(r.estimate - 2 * pi) / (2 * pi));
  }

  TEST_CASE("bound formula") {
    CHECK(min_period_bound(FracOrder(0.25), DoubleWell::quartic(4.0)) == doctest::Approx(pi / 8).epsilon(1e-14));
    CHECK_THROWS_AS(min_period_bound(FracOrder(0.5), DoubleWell::from_taylor({0.0, 0.0, 1.0})), InvalidArgument);
  }

  TEST_CASE("upper bracket must carry a solution") {
    CHECK_THROWS_AS(find_min_period(FracOrder(0.5), quartic, 3.0, 1e-2), InvalidArgument);
  }
}
