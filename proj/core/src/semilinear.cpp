#include "fracperiodic/semilinear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/linear.hpp"
#include "fracperiodic/numerics/parallel.hpp"
#include "fracperiodic/spectral.hpp"

namespace fracperiodic {

void SolveConfig::validate() const {
  if (symmetry == Symmetry::none) throw InvalidArgument("solve needs the odd or even class");
  if (order != 0 && order < 8) throw InvalidArgument("truncation order must be >= 8");
  if (!(newton_tol > 0.0) || !(descent_tol > 0.0) || !(doubling_tol > 0.0) ||
      !(amplitude_threshold > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (max_descent_iterations < 0 || max_newton_iterations < 1) {
    throw InvalidArgument("iteration budgets must be positive");
  }
  if (multistarts < 0) throw InvalidArgument("multistart count must be >= 0");
  if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
}

int default_order(double period) {
  const double wanted = std::max(64.0, 4.0 * period);
  int order = 64;
  while (order < wanted) order *= 2;
  return order;
}

double min_period_bound(const FracOrder& s, const DoubleWell& F) {
  const double curvature = -F.d2(0.0);
  if (!(curvature > 0.0)) throw InvalidArgument("the bound needs F''(0) < 0");
  return 2.0 * std::numbers::pi * std::pow(curvature, -1.0 / (2.0 * s.s()));
}

namespace {

Symmetry class_of(const PeriodicFunction& u) {
  if (u.odd()) return Symmetry::odd;
  for (int m = 1; m <= u.order(); ++m) {
    if (u.sin_coeff(m) != 0.0) return Symmetry::none;
  }
  return Symmetry::even;
}

// Residual restricted to the basis of u's class.
PeriodicFunction class_residual(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F,
                                const FourierBasis& basis) {
  return basis.function(basis.coordinates(semilinear_residual(u, s, F)));
}

PeriodicFunction second_derivative_field(const PeriodicFunction& u, const DoubleWell& F) {
  const int top = 2 * u.order();
  const int points = std::max(std::max(F.degree(), 4) * u.order() + 2, 2 * top + 2);
  std::vector<double> values = u.samples(points);
  for (double& v : values) v = F.d2(v);
  return PeriodicFunction::from_samples(u.period(), top, values, false);
}

double fine_amplitude(const PeriodicFunction& u) { return u.max_abs(8 * u.grid_points()); }

bool decreasing_between_extrema(const PeriodicFunction& u) {
  const int points = 8 * u.grid_points();
  const std::vector<double> v = u.samples(points);
  const int top = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  const int bottom = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
  int length = bottom - top;
  if (length <= 0) length += points;
  for (int k = 1; k < length; ++k) {
    const int i = (top + k) % points;
    const int prev = (top + k - 1) % points;
    if (!(v[i] < v[prev])) return false;
  }
  return true;
}

}  // namespace

double semilinear_residual_norm(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F) {
  return semilinear_residual(u, s, F).l2_norm();
}

namespace {

SemilinearSolution newton_iterate(const PeriodicFunction& u0, const FracOrder& s,
                                  const DoubleWell& F, double tol, int max_iterations,
                                  int forced_steps) {
  if (!(tol > 0.0)) throw InvalidArgument("Newton tolerance must be positive");
  const FourierBasis basis(u0.period(), u0.order(), class_of(u0));
  const Eigen::VectorXd diagonal = basis.multiplier_diagonal(s);
  PeriodicFunction u = basis.function(basis.coordinates(u0));

  SemilinearSolution out(u);
  PeriodicFunction r = class_residual(u, s, F, basis);
  double norm = r.l2_norm();
  out.residual_history.push_back(norm);
  int iteration = 0;
  while (norm > tol || iteration < forced_steps) {
    if (iteration == max_iterations) {
      throw NoConvergence("Newton iteration budget exhausted", norm);
    }
    Eigen::MatrixXd jacobian = basis.multiplication_matrix(second_derivative_field(u, F));
    jacobian.diagonal() += diagonal;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jacobian);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      throw SingularJacobian("Newton Jacobian is numerically singular",
                             rcond * jacobian.cwiseAbs().rowwise().sum().maxCoeff());
    }
    const Eigen::VectorXd step = lu.solve(basis.coordinates(r));
    if (iteration < forced_steps) {
      // Full step without line search; the residual may already sit at round-off.
      u = basis.function(basis.coordinates(u) - step);
      r = class_residual(u, s, F, basis);
      norm = r.l2_norm();
      out.residual_history.push_back(norm);
      ++iteration;
      continue;
    }

    // Backtrack on the residual norm.
    double t = 1.0;
    PeriodicFunction trial = u;
    PeriodicFunction trial_r = r;
    double trial_norm = norm;
    for (int k = 0; k < 30; ++k) {
      trial = basis.function(basis.coordinates(u) - t * step);
      trial_r = class_residual(trial, s, F, basis);
      trial_norm = trial_r.l2_norm();
      if (trial_norm < (1.0 - 1e-4 * t) * norm || trial_norm <= tol) break;
      t *= 0.5;
    }
    if (!(trial_norm < norm)) {
      // Round-off floor: accept when the residual cannot be reduced further.
      if (norm <= 100.0 * tol) break;
      throw NoConvergence("Newton step failed to reduce the residual", norm);
    }
    u = trial;
    r = trial_r;
    norm = trial_norm;
    out.residual_history.push_back(norm);
    ++iteration;
  }
  out.u = u;
  out.residual = norm;
  out.newton_iterations = iteration;
  out.energy = energy_functional(u, s, F);
  out.variational_energy = variational_energy(u, s, F);
  out.amplitude = fine_amplitude(u);
  out.classification = Classification::nonconstant;
  out.monotone_between_extrema = decreasing_between_extrema(u);
  return out;
}

}  // namespace

SemilinearSolution newton_refine(const PeriodicFunction& u0, const FracOrder& s, const DoubleWell& F,
                                 double tol, int max_iterations) {
  return newton_iterate(u0, s, F, tol, max_iterations, 0);
}

namespace {

struct StartOutcome {
  std::optional<SemilinearSolution> solution;
  std::string failure;
};

PeriodicFunction start_function(double period, int order, int index, std::uint64_t seed) {
  static constexpr double kAmplitudes[] = {0.2, -0.2, 0.5, -0.5, 0.9, -0.9};
  if (index < 6) return PeriodicFunction::mode(period, order, 1, 0.0, kAmplitudes[index]);
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(index));
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<double> sin_c(order + 1, 0.0);
  double total = 0.0;
  for (int m = 1; m <= std::min(order, 3); ++m) {
    sin_c[m] = coeff(rng) / m;
    total += std::abs(sin_c[m]);
  }
  const double scale = total > 0.0 ? 0.9 / total : 0.0;
  for (double& c : sin_c) c *= scale;
  return {period, std::vector<double>(order + 1, 0.0), sin_c, true};
}

StartOutcome run_start(const PeriodicFunction& start, const FracOrder& s, const DoubleWell& F,
                       const SolveConfig& cfg) {
  const FourierBasis basis(start.period(), start.order(), Symmetry::odd);
  const Eigen::VectorXd precondition =
      basis.multiplier_diagonal(s).array() + std::max(F.max_abs_d2_on_wells(), 1e-12);
  PeriodicFunction u = start;
  double norm = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_descent_iterations; ++it) {
    const PeriodicFunction r = class_residual(u, s, F, basis);
    norm = r.l2_norm();
    if (norm < cfg.descent_tol || !std::isfinite(norm)) break;
    u = basis.function(basis.coordinates(u) -
                       basis.coordinates(r).cwiseQuotient(precondition));
  }
  if (!std::isfinite(norm) || norm > 0.1) {
    return {std::nullopt, "descent did not reach the Newton basin"};
  }
  try {
    SemilinearSolution sol = newton_refine(u, s, F, cfg.newton_tol, cfg.max_newton_iterations);
    if (sol.amplitude <= cfg.amplitude_threshold) {
      sol.classification = Classification::trivial;
    }
    return {std::move(sol), {}};
  } catch (const SingularJacobian& e) {
    return {std::nullopt, e.what()};
  } catch (const NoConvergence& e) {
    return {std::nullopt, e.what()};
  }
}

SemilinearSolution trivial_solution(double period, int order, const FracOrder& s,
                                    const DoubleWell& F) {
  const PeriodicFunction zero = PeriodicFunction::zero(period, order).as_odd();
  SemilinearSolution out(zero);
  out.residual = semilinear_residual_norm(zero, s, F);
  out.energy = energy_functional(zero, s, F);
  out.variational_energy = variational_energy(zero, s, F);
  out.amplitude = 0.0;
  out.classification = Classification::trivial;
  out.residual_history = {out.residual};
  return out;
}

SemilinearSolution normalize_sign(SemilinearSolution sol) {
  if (sol.u.sin_coeff(1) < 0.0) sol.u = -sol.u;
  return sol;
}

SemilinearSolution solve_odd(double period, const FracOrder& s, const DoubleWell& F,
                             const SolveConfig& cfg) {
  int order = cfg.order > 0 ? cfg.order : default_order(period);
  if (cfg.multistarts == 0) return trivial_solution(period, order, s, F);

  std::vector<StartOutcome> outcomes(cfg.multistarts);
  numerics::parallel_for(cfg.multistarts, cfg.jobs, [&](int i) {
    outcomes[i] = run_start(start_function(period, order, i, cfg.seed), s, F, cfg);
  });

  const SemilinearSolution* best = nullptr;
  const SemilinearSolution* any = nullptr;
  std::string failure;
  for (const StartOutcome& o : outcomes) {
    if (!o.solution) {
      failure = o.failure;
      continue;
    }
    any = &*o.solution;
    if (o.solution->classification == Classification::nonconstant &&
        (best == nullptr || o.solution->variational_energy < best->variational_energy)) {
      best = &*o.solution;
    }
  }
  if (any == nullptr) throw NoConvergence("every multistart failed: " + failure, 0.0);
  if (best == nullptr) return trivial_solution(period, order, s, F);

  SemilinearSolution sol = normalize_sign(*best);
  if (cfg.doubling_check) {
    while (true) {
      if (2 * order > cfg.max_order) {
        throw TruncationNotConverged("doubling check exceeded the maximum order",
                                     sol.truncation_change);
      }
      SemilinearSolution finer = newton_iterate(sol.u.with_order(2 * order), s, F, cfg.newton_tol,
                                                cfg.max_newton_iterations, 1);
      const double change = (finer.u - sol.u).coefficient_norm();
      finer.truncation_change = change;
      finer.classification = Classification::nonconstant;
      sol = std::move(finer);
      order *= 2;
      if (change < cfg.doubling_tol) break;
    }
  }
  return sol;
}

// u(x + T/4) for an odd solution symmetric about T/4 is even; keep its cosine part.
PeriodicFunction quarter_shift_to_even(const PeriodicFunction& u) {
  const int n = u.order();
  std::vector<double> c(n + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    // sin(w_m x + m pi / 2): cosine coefficient sin(m pi/2) for odd m
    if (m % 2 == 1) c[m] = (m % 4 == 1 ? 1.0 : -1.0) * u.sin_coeff(m);
  }
  return {u.period(), std::move(c), std::vector<double>(n + 1, 0.0), false};
}

}  // namespace

SemilinearSolution minimize_energy(double period, const FracOrder& s, const DoubleWell& F,
                                   const SolveConfig& cfg) {
  cfg.validate();
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  if (!F.is_even()) {
    throw InvalidArgument("symmetric-class minimization needs an even potential");
  }
  SemilinearSolution odd = solve_odd(period, s, F, cfg);
  if (cfg.symmetry == Symmetry::odd || odd.classification == Classification::trivial) {
    if (cfg.symmetry == Symmetry::even) {
      odd.u = PeriodicFunction::zero(period, odd.u.order());
    }
    return odd;
  }
  SemilinearSolution even =
      newton_refine(quarter_shift_to_even(odd.u), s, F, cfg.newton_tol, cfg.max_newton_iterations);
  even.truncation_change = odd.truncation_change;
  if (even.u.cos_coeff(1) < 0.0) even.u = -even.u;
  even.monotone_between_extrema = decreasing_between_extrema(even.u);
  return even;
}

MinPeriodResult find_min_period(const FracOrder& s, const DoubleWell& F, double t_hi, double tol,
                                const SolveConfig& cfg) {
  if (!(tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
  SolveConfig probe = cfg;
  probe.symmetry = Symmetry::odd;
  probe.doubling_check = false;
  probe.jobs = 1;
  if (probe.multistarts == 0) probe.multistarts = 6;

  int evaluations = 0;
  const auto nonconstant = [&](double t) {
    SolveConfig c = probe;
    if (cfg.order == 0) c.order = default_order(t);
    return minimize_energy(t, s, F, c).classification == Classification::nonconstant;
  };
  const auto classify = [&](const std::vector<double>& ts) {
    std::vector<char> flags(ts.size());
    numerics::parallel_for(static_cast<int>(ts.size()), cfg.jobs,
                           [&](int i) { flags[i] = nonconstant(ts[i]) ? 1 : 0; });
    evaluations += static_cast<int>(ts.size());
    return flags;
  };

  if (!classify({t_hi})[0]) {
    throw InvalidArgument("the upper period carries no nonconstant solution");
  }
  double hi = t_hi;
  double lo = 0.5 * t_hi;
  while (classify({lo})[0]) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-6) throw InvalidArgument("no trivial period found below the upper bracket");
  }

  // (jobs+1)-section: probe interior points concurrently.
  const int legs = std::max(1, cfg.jobs);
  while (hi - lo > tol) {
    std::vector<double> ts;
    for (int k = 1; k <= legs; ++k) ts.push_back(lo + (hi - lo) * k / (legs + 1));
    const std::vector<char> flags = classify(ts);
    int first = legs;
    for (int k = 0; k < legs; ++k) {
      if (flags[k]) {
        first = k;
        break;
      }
    }
    for (int k = first + 1; k < legs; ++k) {
      if (!flags[k]) throw InconsistentBracket("trivial period above a nonconstant one", ts[k]);
    }
    if (first < legs) hi = ts[first];
    if (first > 0) lo = ts[first - 1];
  }

  // Confirm the trivial side a little further down.
  const std::vector<char> below = classify({0.95 * lo, 0.9 * lo});
  for (std::size_t k = 0; k < below.size(); ++k) {
    if (below[k]) {
      throw InconsistentBracket("nonconstant solution below a trivially classified period",
                                k == 0 ? 0.95 * lo : 0.9 * lo);
    }
  }
  return {hi, lo, min_period_bound(s, F), evaluations};
}

}  // namespace fracperiodic
