#pragma once

#include <memory>

#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/numerics/quadrature.hpp"
#include "fracperiodic/periodic_function.hpp"

namespace fracperiodic {

/// Profile J(y) = (2^{1-s}/Gamma(s)) (w y)^s K_s(w y) of a single Fourier
/// mode of frequency w. J(0) = 1, J decays like exp(-w y), and
/// J'' + (a/y) J' - w^2 J = 0.
class BesselProfile {
public:
  BesselProfile(const FracOrder& s, double frequency);
  /// Mode m of period T (frequency 2 pi m / T).
  static BesselProfile for_mode(const FracOrder& s, int m, double period);

  double frequency() const noexcept { return omega_; }
  /// mu with J(y) = mu y^s K_s(w y), i.e. 2^{1-s} Gamma(1-s) sin(s pi) w^s / pi.
  double normalization() const;

  double value(double y) const;
  double derivative(double y) const;
  /// y^a J'(y).
  double weighted_derivative(double y) const;
  /// lim_{y -> 0} y^a J'(y) from the small-argument behaviour of K_{1-s}.
  double weighted_derivative_limit() const;

private:
  FracOrder s_;
  double omega_;
  double scale_;  // 2^{1-s} / Gamma(s)
};

enum class ExtensionMethod { bessel_series, poisson_convolution };

struct ExtensionOptions {
  /// Nodes of the attached y-rule; the panel layout is chosen to land near it.
  int y_nodes = 128;
  /// Truncation height in units of the slowest decay length 1/w_1.
  double decay_lengths = 18.0;
  /// Relative accuracy of the Poisson-convolution quadrature.
  double quad_tol = 1e-12;
};

/// The s-harmonic extension U(x, y) of a periodic trace to the half strip.
/// Immutable; evaluation is thread-safe.
class ExtensionField {
public:
  class Backend;

  const PeriodicFunction& base() const noexcept;
  const FracOrder& order() const noexcept;
  ExtensionMethod method() const noexcept;
  const ExtensionOptions& options() const noexcept;

  double value(double x, double y) const;
  double operator()(double x, double y) const { return value(x, y); }
  double dx(double x, double y) const;
  /// y^a U_y(x, y).
  double weighted_dy(double x, double y) const;
  double dy(double x, double y) const;

  /// Height beyond which every mode is below exp(-decay_lengths).
  double y_max() const noexcept;
  /// Composite rule for int_0^{y_max} f(y) y^alpha dy tuned to the modes of
  /// the base. `y_rule()` is the one for the extension weight alpha = a.
  numerics::QuadratureRule y_rule(double alpha, double upper = 0.0) const;
  const numerics::QuadratureRule& y_rule() const noexcept;

  explicit ExtensionField(std::shared_ptr<const Backend> backend);

private:
  std::shared_ptr<const Backend> backend_;
};

/// U = b_0 + sum_m J_m(y) [a_m sin(w_m x) + b_m cos(w_m x)].
ExtensionField extend_bessel(const PeriodicFunction& u, const FracOrder& s,
                             const ExtensionOptions& options = {});

/// U(x, y) = int_R p_s(z, y) u(x - z) dz with the kernel images folded onto
/// one period in closed form.
ExtensionField extend_poisson(const PeriodicFunction& u, const FracOrder& s,
                              const ExtensionOptions& options = {});

/// p_s(x, y) = C_{1,s} y^{2s} / (x^2 + y^2)^{(1+2s)/2}.
double poisson_kernel(const FracOrder& s, double x, double y);
/// int_R p_s(x, y) dx by quadrature (should be 1).
double poisson_kernel_mass(const FracOrder& s, double y);

/// -d_s lim_{y -> 0} y^a U_y: per mode for the Bessel route, by
/// extrapolation in y for the convolution route (ExtrapolationDivergence if
/// the extrapolants disagree beyond `tol`).
PeriodicFunction dirichlet_to_neumann(const ExtensionField& field, double tol = 1e-7);

/// int_0^T int_0^inf y^a |grad U|^2 dy dx truncated at `y_max` (0 = the
/// field's own height). Throws TailNotConverged when the estimated
/// remainder beyond y_max exceeds 1e-10.
double extension_energy(const ExtensionField& field, double y_max = 0.0);

}  // namespace fracperiodic
