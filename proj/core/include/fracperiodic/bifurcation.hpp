#pragma once

#include <vector>

#include "fracperiodic/double_well.hpp"
#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/periodic_function.hpp"

namespace fracperiodic {

// Branches of the rescaled problem on period 2 pi,
//
//   G(lambda, u) = (-d_xx)^s u + (lambda / kappa) F'(u) = 0,  kappa = -F''(0) > 0,
//
// in the odd class. A solution u at lambda is a solution of the original
// equation on period 2 pi (lambda / kappa)^{1/(2s)} after stretching x.

enum class Criticality { supercritical, subcritical, inconclusive };

const char* to_string(Criticality c) noexcept;

struct BranchPoint {
  double lambda = 0.0;
  PeriodicFunction u;
  double amplitude = 0.0;  // max |u|
  double residual = 0.0;   // ||G(lambda, u)||_{L2(0, 2 pi)}
  double sigma_min = 0.0;  // smallest singular value of G_u(lambda, u)
};

struct Branch {
  std::vector<BranchPoint> points;
  double bifurcation_lambda = 0.0;
  Criticality direction = Criticality::inconclusive;
};

/// ||G(lambda, u)||; u must have period 2 pi.
double rescaled_residual(const FracOrder& s, const DoubleWell& F, double lambda,
                         const PeriodicFunction& u);

/// Values of lambda in the odd class where G_u(lambda, 0) is singular, found
/// by scanning its smallest singular value and bracketing sign changes of
/// the determinant. Returns the first m_max of them, increasing.
std::vector<double> detect_bifurcation_points(const FracOrder& s, const DoubleWell& F, int m_max,
                                              int order = 0);

struct ContinuationOptions {
  int order = 64;           // sine modes on period 2 pi
  double newton_tol = 1e-10;
  int max_corrector_iterations = 12;
  int max_halvings = 10;
  double start_offset = 1e-4;   // predictor lambda above the bifurcation point
  double start_amplitude = 1e-3;  // predictor coefficient of the eigenfunction
};

/// Pseudo-arclength continuation of the branch leaving the trivial solution
/// at the detected bifurcation point closest to lambda_start. Throws
/// StepFailure after max_halvings consecutive step reductions and
/// BranchLost if the branch collapses onto u = 0 or reaches |u| >= 1.
Branch continue_branch(const FracOrder& s, const DoubleWell& F, double lambda_start, int steps,
                       double ds_arc, const ContinuationOptions& options = {});

/// Newton at fixed lambda from u0 (odd, period 2 pi).
BranchPoint solve_at_lambda(const FracOrder& s, const DoubleWell& F, double lambda,
                            const PeriodicFunction& u0, double tol = 1e-10,
                            int max_iterations = 40);

struct CriticalityReport {
  Criticality criticality = Criticality::inconclusive;
  double lambda = 0.0;       // m^{2s}
  double coefficient = 0.0;  // lambda F''''(0) / (-F''(0)) * int phi^4
  double phi4_integral = 0.0;
};

/// Local direction of the pitchfork at the m-th odd eigenvalue. Returns
/// inconclusive when F'''(0) != 0 (a transcritical term is not excluded).
CriticalityReport classify_criticality(const FracOrder& s, const DoubleWell& F, int m);

struct PeriodSample {
  double lambda;
  double period;          // 2 pi (lambda / kappa)^{1/(2s)}
  double amplitude;
  double residual_rescaled;  // ||G(lambda, u)|| on period 2 pi
  double residual_original;  // ||(-d_xx)^s u_T + F'(u_T)|| on period T
  PeriodicFunction u;        // solution on period T
};

struct T0BoundReport {
  double bound;  // 2 pi (-F''(0))^{-1/(2s)}
  std::vector<PeriodSample> samples;
  double smallest_period() const;
  double max_residual() const;
};

/// Marches lambda over lambda_step, 2 lambda_step, ... up to lambda_max
/// above the first bifurcation point, solving G = 0 at each value, and maps
/// every solution to the original period.
T0BoundReport verify_t0_bound(const FracOrder& s, const DoubleWell& F, double lambda_max = 4.0,
                              double lambda_step = 1e-2, int order = 0);

}  // namespace fracperiodic
