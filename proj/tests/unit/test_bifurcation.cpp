#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracperiodic/bifurcation.hpp"
#include "fracperiodic/errors.hpp"
#include "fracperiodic/semilinear.hpp"
#include "oracles.hpp"

using namespace fracperiodic;
using oracle::pi;

namespace {

const DoubleWell quartic = DoubleWell::quartic();
// F' = -u - u^3: F''''(0) < 0 with the same curvature at 0
const DoubleWell softening = DoubleWell::from_taylor({0.0, 0.0, -1.0, 0.0, -6.0});

double fitted_slope_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  double xy = 0.0, xx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
  }
  return xy / xx;
}

}  // namespace

TEST_SUITE("detect_bifurcation_points") {
  TEST_CASE("points are m^{2s}") {
    for (double s : {0.25, 0.5, 0.75}) {
      const std::vector<double> pts = detect_bifurcation_points(FracOrder(s), quartic, 5);
      REQUIRE(pts.size() == 5);
      for (int m = 1; m <= 5; ++m) CHECK(pts[m - 1] == doctest::Approx(std::pow(m, 2 * s)).epsilon(1e-8));
    }
  }

  TEST_CASE("examples") {
    const auto half = detect_bifurcation_points(FracOrder(0.5), quartic, 3);
    CHECK(half[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(half[1] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(half[2] == doctest::Approx(3.0).epsilon(1e-8));
    const auto quarter = detect_bifurcation_points(FracOrder(0.25), quartic, 2);
    CHECK(quarter[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    for (double s : {0.1, 0.37, 0.9}) CHECK(detect_bifurcation_points(FracOrder(s), quartic, 1)[0] == doctest::Approx(1.0).epsilon(1e-8));
    // independent of the curvature scale: lambda is measured in units of -F''(0)
    CHECK(detect_bifurcation_points(FracOrder(0.5), DoubleWell::quartic(3.0), 2)[1] == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_SUITE("continue_branch") {
  TEST_CASE("quartic, s = 1/2, 50 steps") {
    const Branch b = continue_branch(FracOrder(0.5), quartic, 1.0, 50, 0.05);
    REQUIRE(b.points.size() == 50);
    CHECK(b.bifurcation_lambda == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.direction == Criticality::supercritical);
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      const BranchPoint& p = b.points[i];
      CHECK(p.lambda > 1.0);
      CHECK(p.residual <= 1e-9);
      CHECK(p.u.odd());
      CHECK(p.u(0.0) == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(p.amplitude < 1.0);
      for (double v : p.u.samples(256)) CHECK(std::abs(v) < 1.0);
      if (i > 0) {
        CHECK(p.amplitude > b.points[i - 1].amplitude);
        CHECK(p.lambda > b.points[i - 1].lambda);
        // consecutive points lie within one arclength step
        const double dl = p.lambda - b.points[i - 1].lambda;
        const double du = (p.u - b.points[i - 1].u).coefficient_norm();
        CHECK(std::sqrt(dl * dl + du * du) <= 0.05 * (1 + 1e-6));
      }
    }
  }

  TEST_CASE("pitchfork fit amplitude^2 = c (lambda - 1)") {
    const Branch b = continue_branch(FracOrder(0.5), quartic, 1.0, 10, 0.02);
    std::vector<double> x, y;
    for (const BranchPoint& p : b.points) {
      x.push_back(p.lambda - b.bifurcation_lambda);
      y.push_back(p.amplitude * p.amplitude);
    }
    CHECK(fitted_slope_through_origin(x, y) > 0.0);
    CHECK(oracle::r_squared(x, y) > 0.99);
  }

  TEST_CASE("pitchfork symmetry") {
    const Branch b = continue_branch(FracOrder(0.5), quartic, 1.0, 8, 0.05);
    for (const BranchPoint& p : b.points) {
      const double r = rescaled_residual(FracOrder(0.5), quartic, p.lambda, p.u);
      const double r_neg = rescaled_residual(FracOrder(0.5), quartic, p.lambda, -p.u);
      CHECK(std::abs(r_neg - r) <= 1e-13);
      CHECK(std::abs(r - p.residual) <= 1e-13);
    }
  }

  TEST_CASE("trivial branch stays at zero") {
    for (double lambda : {0.3, 0.7, 1.5, 2.5}) {
      const BranchPoint p = solve_at_lambda(FracOrder(0.5), quartic, lambda, PeriodicFunction::zero(2 * pi, 16).as_odd());
      CHECK(p.amplitude == 0.0);
      CHECK(p.residual == 0.0);
    }
  }

  TEST_CASE("argument validation") {
    CHECK_THROWS_AS(continue_branch(FracOrder(0.5), quartic, 1.0, 5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(continue_branch(FracOrder(0.5), quartic, 1.0, 0, 0.1), InvalidArgument);
  }
}

TEST_SUITE("classify_criticality") {
  TEST_CASE("quartic is supercritical, softening quartic subcritical") {
    CHECK(quartic.d3(0.0) == 0.0);
    CHECK(quartic.d4(0.0) == doctest::Approx(6.0));
    const CriticalityReport q = classify_criticality(FracOrder(0.5), quartic, 1);
    CHECK(q.criticality == Criticality::supercritical);
    CHECK(q.lambda == doctest::Approx(1.0).epsilon(1e-8));
    // phi = sin x / sqrt(pi): int phi^4 = 3 / (4 pi)
    CHECK(q.phi4_integral == doctest::Approx(3.0 / (4 * pi)).epsilon(1e-10));
    CHECK(q.coefficient == doctest::Approx(6.0 * 3.0 / (4 * pi)).epsilon(1e-10));
    CHECK(classify_criticality(FracOrder(0.5), softening, 1).criticality == Criticality::subcritical);
  }

  TEST_CASE("cubic term is inconclusive") {
    const DoubleWell cubic = DoubleWell::from_taylor({0.25, 0.0, -1.0, 0.5, 6.0});
    CHECK(classify_criticality(FracOrder(0.5), cubic, 1).criticality == Criticality::inconclusive);
  }

  TEST_CASE("agrees with the traced branch direction") {
    for (double s : {0.3, 0.5, 0.7}) {
      const FracOrder o(s);
      CHECK(continue_branch(o, quartic, 1.0, 6, 0.02).direction == classify_criticality(o, quartic, 1).criticality);
      CHECK(continue_branch(o, softening, 1.0, 6, 0.02).direction == classify_criticality(o, softening, 1).criticality);
    }
  }
}

TEST_SUITE("verify_t0_bound") {
  TEST_CASE("periods from the rescaling") {
    const T0BoundReport r = verify_t0_bound(FracOrder(0.5), quartic, 2.0, 0.1);
    CHECK(r.bound == doctest::Approx(2 * pi).epsilon(1e-14));
    REQUIRE(r.samples.size() == 10);
    const PeriodSample& at15 = r.samples[4];
    CHECK(at15.lambda == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(at15.period == doctest::Approx(3 * pi).epsilon(1e-12));
    CHECK(at15.residual_original <= 1e-9);
    CHECK(semilinear_residual_norm(at15.u, FracOrder(0.5), quartic) <= 1e-9);
    CHECK(r.smallest_period() > r.bound);
    CHECK(r.smallest_period() == doctest::Approx(2 * pi * 1.1).epsilon(1e-12));
    CHECK(r.max_residual() <= 1e-9);
    for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].period > r.samples[i - 1].period);
  }

  TEST_CASE("s = 1/4, lambda = 2 gives 8 pi") {
    const T0BoundReport r = verify_t0_bound(FracOrder(0.25), quartic, 2.0, 0.5);
    REQUIRE(r.samples.size() == 2);
    CHECK(r.samples[1].lambda == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.samples[1].period == doctest::Approx(8 * pi).epsilon(1e-12));
    CHECK(r.max_residual() <= 1e-9);
  }

  TEST_CASE("rescaling round trip") {
    const Branch b = continue_branch(FracOrder(0.5), quartic, 1.0, 3, 0.05);
    for (const BranchPoint& p : b.points) {
      const double T = 2 * pi * p.lambda;
      const PeriodicFunction back = p.u.with_period(T).with_period(2 * pi);
      CHECK(coefficient_distance(back, p.u) <= 1e-10);
      CHECK(semilinear_residual_norm(p.u.with_period(T), FracOrder(0.5), quartic) <= 1e-9);
    }
  }
}
