#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fracperiodic/double_well.hpp"
#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/periodic_function.hpp"

namespace fracperiodic {

enum class Classification { trivial, nonconstant };

struct SolveConfig {
  /// odd: sine series with a_1 >= 0. even: the odd solution shifted by T/4
  /// and refined in the cosine basis, so that u(0) >= 0 >= u(T/2).
  Symmetry symmetry = Symmetry::odd;
  /// Truncation order; 0 picks max(64, 4T) rounded up to a power of two.
  int order = 0;
  double newton_tol = 1e-10;
  /// Preconditioned descent hands over to Newton below this residual.
  double descent_tol = 1e-4;
  int max_descent_iterations = 60000;
  int max_newton_iterations = 40;
  /// Deterministic starts c sin(2 pi x / T), c in {0.2, 0.5, 0.9} with both
  /// signs, then seeded random low-mode starts.
  int multistarts = 6;
  std::uint64_t seed = 12345;
  double amplitude_threshold = 1e-6;
  /// Re-solve at 2N and require the coefficients to move less than this.
  bool doubling_check = true;
  double doubling_tol = 1e-8;
  int max_order = 4096;
  int jobs = 1;

  void validate() const;
};

struct SemilinearSolution {
  explicit SemilinearSolution(PeriodicFunction u0) : u(std::move(u0)) {}

  PeriodicFunction u;
  double residual = 0.0;   // ||(-d_xx)^s u + F'(u)||_{L2(0,T)}
  double energy = 0.0;     // J, the half-period extension energy
  double variational_energy = 0.0;  // E, the functional the solver descends on
  double amplitude = 0.0;  // max |u|
  Classification classification = Classification::trivial;
  int newton_iterations = 0;
  std::vector<double> residual_history;
  /// Coefficient change under N -> 2N (negative when not checked).
  double truncation_change = -1.0;
  /// u'(x) < 0 between the maximum and the following minimum (for even
  /// solutions: on (0, T/2)).
  bool monotone_between_extrema = false;
};

/// ||(-d_xx)^s u + F'(u)|| in L2(0, T).
double semilinear_residual_norm(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F);

/// Newton iteration on (-d_xx)^s u + F'(u) = 0 within the parity class of u0
/// (odd flag set: sine basis; pure cosine series: cosine basis; otherwise
/// the full basis). Throws SingularJacobian or NoConvergence.
SemilinearSolution newton_refine(const PeriodicFunction& u0, const FracOrder& s, const DoubleWell& F,
                                 double tol = 1e-10, int max_iterations = 40);

/// Local minimizer of the energy in the chosen symmetry class.
SemilinearSolution minimize_energy(double period, const FracOrder& s, const DoubleWell& F,
                                   const SolveConfig& cfg = {});

/// Default truncation order for period T.
int default_order(double period);

/// 2 pi (-F''(0))^{-1/(2s)}: periods above it carry an odd branch.
double min_period_bound(const FracOrder& s, const DoubleWell& F);

struct MinPeriodResult {
  double estimate;      // smallest period found to carry a nonconstant solution
  double trivial_below; // largest period classified trivial
  double bound;         // min_period_bound
  int evaluations;
};

/// Bisection in T between "only trivial" and "nonconstant found". T_hi must
/// carry a nonconstant solution. Throws InconsistentBracket if a period below
/// a trivially classified one turns out nonconstant.
MinPeriodResult find_min_period(const FracOrder& s, const DoubleWell& F, double t_hi, double tol,
                                const SolveConfig& cfg = {});

}  // namespace fracperiodic
