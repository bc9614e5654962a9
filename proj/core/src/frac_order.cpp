#include "fracperiodic/frac_order.hpp"

#include <cmath>
#include <numbers>

#include "fracperiodic/errors.hpp"

namespace fracperiodic {

FracOrder::FracOrder(double s) : s_(s) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("fractional order s must lie strictly in (0,1)");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  d_s_ = std::exp2(2.0 * s - 1.0) * std::tgamma(s) / std::tgamma(1.0 - s);
  c_s_ = (2.0 * s / std::exp2(2.0 * s)) * std::tgamma(1.0 - s) / std::tgamma(1.0 + s);
  // |Gamma(-s)| = Gamma(1-s) / s for s in (0,1)
  c_sing_ = std::exp2(2.0 * s) * std::tgamma(0.5 + s) * s / (sqrt_pi * std::tgamma(1.0 - s));
  poisson_constant_ = std::tgamma(0.5 + s) / (sqrt_pi * std::tgamma(s));
}

double FracOrder::multiplier(double omega) const {
  return omega == 0.0 ? 0.0 : std::pow(std::abs(omega), 2.0 * s_);
}

}  // namespace fracperiodic
