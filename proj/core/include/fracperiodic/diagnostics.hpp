#pragma once

#include <vector>

#include "fracperiodic/double_well.hpp"
#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/periodic_function.hpp"
#include "fracperiodic/semilinear.hpp"

namespace fracperiodic {

// Identities for extensions U of solutions u of (-d_xx)^s u + F'(u) = 0.
// With this normalization d_s lim y^a U_y = F'(u), and the conserved
// quantity is
//
//   d_s w(x) - F(u(x)),   w(x) = (1/2) int_0^inf (U_x^2 - U_y^2) y^a dy.

struct HamiltonianReport {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> potential;  // F(u(x))
  std::vector<double> values;     // d_s w - F(u)
  double constant = 0.0;          // C_T, the sample mean of values
  double max_deviation = 0.0;
  double stddev = 0.0;
  int worst = 0;                  // index of the largest deviation
};

/// Samples d_s w - F(u) at n_samples equispaced points of one period.
HamiltonianReport hamiltonian_samples(const PeriodicFunction& u, const FracOrder& s,
                                      const DoubleWell& F, int n_samples = 64);

/// hamiltonian_samples, then throws IdentityViolation if any sample deviates
/// from the mean by more than tol.
HamiltonianReport hamiltonian_check(const PeriodicFunction& u, const FracOrder& s,
                                    const DoubleWell& F, int n_samples = 64, double tol = 1e-5);

struct ModicaOptions {
  int nx = 64;  // x grid on [0, T/2], endpoints included
  int ny = 64;  // y grid on [0, y_max], quadratic spacing, y = 0 included
  double tol = 1e-5;
  int hamiltonian_samples = 64;
  /// Stencil width of the centered differences in the divergence identity.
  double stencil = 1e-3;
  /// Every `pde_stride`-th interior grid point is checked.
  int pde_stride = 8;
};

struct ModicaReport {
  std::vector<double> x;
  std::vector<double> y;
  /// v(x_i, y_j) at values[j * nx + i], where
  /// v = (d_s / 2) int_0^y (U_x^2 - U_y^2) t^a dt - F(u(x)) - C_T.
  std::vector<double> values;
  double c_t = 0.0;
  double c_hat = 0.0;        // sup_x (-F(u(x)) - C_T)
  double lower_bound = 0.0;  // (d_s / 2) int_0^inf U_y(T/2, t)^2 t^a dt
  double max_value = 0.0;
  double max_off_axis = 0.0;  // max over the rows y > 0
  int argmax_x = 0;
  int argmax_y = 0;
  double tail_max = 0.0;      // max |v| on the top row
  /// max |div(y^{-a} grad v) - d_s a U_y^2 / y| over the checked points.
  double pde_residual = 0.0;
};

/// Grid evaluation of the Modica-type quantity for an even solution
/// (cosine series, maximum at 0, minimum at T/2). Throws
/// InequalityViolation if v exceeds c_hat + tol, if c_hat <= 0, or if the
/// grid maximum is not attained on the row y = 0.
ModicaReport modica_check(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F,
                          const ModicaOptions& options = {});

enum class Regime { sub_half, half, super_half };

const char* to_string(Regime r) noexcept;

/// T^{1-2s}, ln T or 1.
double regime_scale(const FracOrder& s, double period);

struct EnergyScanRow {
  double period;
  double energy;              // J(U_T)
  double variational_energy;  // E(u_T)
  double amplitude;
  double sigma;               // J / (F(0) T)
  double slope_so_far;        // fit over the rows up to this one (NaN for the first)
  double residual;
  PeriodicFunction u;
};

struct EnergyScanReport {
  Regime regime;
  std::vector<EnergyScanRow> rows;
  /// Slope of log J against log T (s != 1/2) or of J against ln T (s = 1/2).
  double slope = 0.0;
  double ratio = 0.0;          // J(T_last) / J(T_first)
  double max_j_over_log = 0.0; // max J / ln T
  double sigma_max = 0.0;
  bool sigma_decreasing = false;
  bool energies_nonnegative = false;
};

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Odd-class minimizers for every period in the list (run on `jobs` threads)
/// and the scaling of their energies.
EnergyScanReport energy_scan(const FracOrder& s, const DoubleWell& F,
                             const std::vector<double>& periods, const SolveConfig& config = {},
                             int jobs = 1);

// Competitor h: odd, T-periodic, h = x/d on [0, d], 1 on [d, T/2 - d], and
// linear back to 0 at T/2.

double test_function(double period, double width, double x);

/// D(z) = int_{-T/2}^{T/2} |h(x) - h(x + z)|^2 dx, exact.
double structure_function(double period, double width, double z);

struct TestFunctionReport {
  double period = 0.0;
  double width = 0.0;
  // Exact partition of G = int_{-T/2}^{T/2} int_R |h(x)-h(t)|^2 / |x-t|^{1+2s} dt dx:
  double far = 0.0;           // |x - t| >= T/2
  double plateaus = 0.0;      // |x - t| < T/2, plateaus of opposite sign
  double plateau_ramp = 0.0;  // |x - t| < T/2, one plateau and one ramp
  double ramps = 0.0;         // |x - t| < T/2, both on ramps
  // Explicit bounds for each piece.
  double far_bound = 0.0;
  double plateaus_bound = 0.0;
  double plateau_ramp_bound = 0.0;
  double ramps_bound = 0.0;
  // Reported constants: far / T^{1-2s}, plateaus / regime_scale, plateau_ramp,
  // ramps / d^{1-2s}.
  double far_constant = 0.0;
  double plateaus_constant = 0.0;
  double plateau_ramp_constant = 0.0;
  double ramps_constant = 0.0;

  double double_integral = 0.0;  // G
  double potential = 0.0;        // int_0^{T/2} F(h)
  double total = 0.0;            // G + potential
  double total_constant = 0.0;   // total / regime_scale
  /// Energies of h in the two normalizations used for solutions.
  double energy = 0.0;              // J(h)
  double variational_energy = 0.0;  // E(h)

  bool regions_hold() const noexcept;
};

/// Requires 0 < d < T/4. Throws QuadratureNonConvergence.
TestFunctionReport test_function_bound(const FracOrder& s, double period, double width,
                                       const DoubleWell& F, double quad_tol = 1e-10);

/// Totals over `count` widths spaced geometrically in [d_min, T/4).
std::vector<TestFunctionReport> test_function_width_scan(const FracOrder& s, double period,
                                                         const DoubleWell& F, int count = 16,
                                                         double d_min = 0.25);

}  // namespace fracperiodic
