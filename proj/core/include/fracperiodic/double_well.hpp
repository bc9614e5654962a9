#pragma once

#include <string>
#include <vector>

namespace fracperiodic {

/// Polynomial double-well potential F(u) = sum_k c_k u^k with wells at +-1.
///
/// Every potential the library works with is a polynomial: the canonical
/// quartic, scalings of it, and potentials given by their Taylor data at 0.
class DoubleWell {
public:
  /// Power-basis coefficients c_0, c_1, ...
  explicit DoubleWell(std::vector<double> coefficients);

  /// scale * (1 - u^2)^2 / 4, so F''(0) = -scale.
  static DoubleWell quartic(double scale = 1.0);
  /// Builds F from F(0), F'(0), F''(0), ... (Taylor data at the origin).
  static DoubleWell from_taylor(const std::vector<double>& derivatives_at_zero);

  double value(double u) const { return derivative(u, 0); }
  double d1(double u) const { return derivative(u, 1); }
  double d2(double u) const { return derivative(u, 2); }
  double d3(double u) const { return derivative(u, 3); }
  double d4(double u) const { return derivative(u, 4); }
  double derivative(double u, int k) const;
  double operator()(double u) const { return value(u); }

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  /// Derivatives F^{(k)}(0) for k = 0..degree.
  std::vector<double> taylor_at_zero() const;
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_even() const noexcept;

  /// max |F''| over [-1, 1], used as the descent preconditioner shift.
  double max_abs_d2_on_wells() const;

  /// Checks F(+-1) = F'(+-1) = 0, F > 0 on (-1,1), F nondecreasing on
  /// (-1,0) and nonincreasing on (0,1), on `samples` grid points. Throws
  /// InvalidArgument naming the first failed condition.
  void validate(int samples = 2001) const;

  /// Human-readable description, e.g. "quartic(1)" or "taylor[...]".
  std::string describe() const;

private:
  std::vector<double> coeffs_;
};

}  // namespace fracperiodic
