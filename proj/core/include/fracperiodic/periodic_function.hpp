#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracperiodic {

/// Parity class used by solvers that work on a symmetric subspace.
enum class Symmetry { none, odd, even };

/// A real T-periodic trigonometric polynomial
///
///   u(x) = b_0 + sum_{m=1}^{N} [ a_m sin(w_m x) + b_m cos(w_m x) ],  w_m = 2 pi m / T.
///
/// Immutable value type. `sin_coeffs()[0]` is always 0 so both coefficient
/// arrays are indexed by the mode number m. When the odd flag is set all
/// cosine coefficients are zero.
class PeriodicFunction {
public:
  PeriodicFunction(double period, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                   bool odd = false);

  static PeriodicFunction zero(double period, int order);
  static PeriodicFunction constant(double period, int order, double value);
  /// Single mode c_cos cos(w_m x) + c_sin sin(w_m x).
  static PeriodicFunction mode(double period, int order, int m, double c_cos, double c_sin);
  /// Projection from samples on M > 2N equispaced nodes x_j = j T / M.
  static PeriodicFunction from_samples(double period, int order, std::span<const double> samples,
                                       bool odd = false);
  /// Interpolates f on the 2N+2 node grid (or `points` nodes when given).
  static PeriodicFunction from_function(double period, int order,
                                        const std::function<double(double)>& f, bool odd = false,
                                        int points = 0);

  double period() const noexcept { return period_; }
  int order() const noexcept { return static_cast<int>(cos_.size()) - 1; }
  bool odd() const noexcept { return odd_; }
  double angular_frequency(int m) const noexcept;

  std::span<const double> cos_coeffs() const noexcept { return cos_; }
  std::span<const double> sin_coeffs() const noexcept { return sin_; }
  double cos_coeff(int m) const { return cos_.at(m); }
  double sin_coeff(int m) const { return sin_.at(m); }

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  /// k-th x-derivative at x.
  double derivative(double x, int k = 1) const;

  /// u(x) - u(x+z), evaluated through half-angle products so that no
  /// digits are lost for small z.
  double forward_difference(double x, double z) const;
  /// 2u(x) - u(x+z) - u(x-z), also free of cancellation.
  double second_difference(double x, double z) const;

  /// Number of nodes of the default grid, 2N+2.
  int grid_points() const noexcept { return 2 * order() + 2; }
  std::vector<double> samples(int points) const;
  std::vector<double> grid_samples() const { return samples(grid_points()); }
  static std::vector<double> nodes(double period, int points);

  /// Same coefficients, zero-padded or truncated to `order`.
  PeriodicFunction with_order(int order) const;
  /// Same coefficients on a different period: v(x) = u(x * T / period).
  PeriodicFunction with_period(double period) const;
  /// Returns a copy whose odd flag is set (requires vanishing cosine part).
  PeriodicFunction as_odd() const;

  /// Applies a per-mode factor: coefficient m is multiplied by factor(m).
  PeriodicFunction map_modes(const std::function<double(int)>& factor) const;

  /// L2 inner product and norm over one period.
  double inner(const PeriodicFunction& other) const;
  double l2_norm() const;
  /// Euclidean norm of the coefficient vector (b_0..b_N, a_1..a_N).
  double coefficient_norm() const;
  double max_abs(int points = 0) const;
  bool is_constant(double tol = 0.0) const;

  friend PeriodicFunction operator+(const PeriodicFunction& u, const PeriodicFunction& v);
  friend PeriodicFunction operator-(const PeriodicFunction& u, const PeriodicFunction& v);
  friend PeriodicFunction operator*(double c, const PeriodicFunction& u);
  PeriodicFunction operator-() const { return -1.0 * *this; }

private:
  double period_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  bool odd_;
};

/// Max coefficient difference after padding both to the larger order.
double coefficient_distance(const PeriodicFunction& u, const PeriodicFunction& v);

}  // namespace fracperiodic
