#pragma once

namespace fracperiodic {

/// The fractional exponent s in (0,1) together with the constants every
/// module derives from it.
class FracOrder {
public:
  explicit FracOrder(double s);

  double s() const noexcept { return s_; }
  /// Weight exponent a = 1 - 2s of the extension problem.
  double a() const noexcept { return 1.0 - 2.0 * s_; }
  /// Dirichlet-to-Neumann normalization 2^{2s-1} Gamma(s) / Gamma(1-s).
  double d_s() const noexcept { return d_s_; }
  /// (2s / 2^{2s}) Gamma(1-s) / Gamma(1+s); the reciprocal of d_s.
  double c_s() const noexcept { return c_s_; }
  /// Normalization of the 1-D singular integral,
  /// 4^s Gamma(1/2 + s) / (sqrt(pi) |Gamma(-s)|).
  double c_sing() const noexcept { return c_sing_; }
  /// Mass normalization of the 1-D Poisson kernel, Gamma((1+2s)/2) / (sqrt(pi) Gamma(s)).
  double poisson_constant() const noexcept { return poisson_constant_; }

  /// Fourier symbol |omega|^{2s}.
  double multiplier(double omega) const;

private:
  double s_;
  double d_s_;
  double c_s_;
  double c_sing_;
  double poisson_constant_;
};

}  // namespace fracperiodic
