#include "fracperiodic/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/numerics/trig_grid.hpp"

namespace fracperiodic {

PeriodicFunction::PeriodicFunction(double period, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs, bool odd)
    : period_(period), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)), odd_(odd) {
  if (!(period > 0.0) || !std::isfinite(period)) throw InvalidArgument("period must be positive");
  if (cos_.empty()) throw InvalidArgument("need at least the constant coefficient");
  // Accept a_1..a_N as well as the internal layout with a leading zero slot.
  if (sin_.size() + 1 == cos_.size()) sin_.insert(sin_.begin(), 0.0);
  if (sin_.size() != cos_.size()) throw InvalidArgument("cosine/sine coefficient counts differ");
  sin_[0] = 0.0;
  for (double c : cos_) {
    if (!std::isfinite(c)) throw InvalidArgument("non-finite coefficient");
  }
  for (double c : sin_) {
    if (!std::isfinite(c)) throw InvalidArgument("non-finite coefficient");
  }
  if (odd_ && std::any_of(cos_.begin(), cos_.end(), [](double c) { return c != 0.0; })) {
    throw InvalidArgument("odd function cannot carry cosine coefficients");
  }
}

PeriodicFunction PeriodicFunction::zero(double period, int order) {
  if (order < 0) throw InvalidArgument("order must be non-negative");
  return {period, std::vector<double>(order + 1, 0.0), std::vector<double>(order + 1, 0.0)};
}

PeriodicFunction PeriodicFunction::constant(double period, int order, double value) {
  if (order < 0) throw InvalidArgument("order must be non-negative");
  std::vector<double> c(order + 1, 0.0);
  c[0] = value;
  return {period, std::move(c), std::vector<double>(order + 1, 0.0)};
}

PeriodicFunction PeriodicFunction::mode(double period, int order, int m, double c_cos,
                                        double c_sin) {
  if (m < 0 || m > order) throw InvalidArgument("mode index outside truncation");
  std::vector<double> c(order + 1, 0.0);
  std::vector<double> s(order + 1, 0.0);
  c[m] = c_cos;
  if (m > 0) s[m] = c_sin;
  return {period, std::move(c), std::move(s), c_cos == 0.0 && m > 0};
}

PeriodicFunction PeriodicFunction::from_samples(double period, int order,
                                                std::span<const double> samples, bool odd) {
  numerics::TrigGrid grid(order, static_cast<int>(samples.size()));
  std::vector<double> c(order + 1);
  std::vector<double> s(order + 1);
  grid.analyze(samples, c, s);
  if (odd) std::fill(c.begin(), c.end(), 0.0);
  return {period, std::move(c), std::move(s), odd};
}

PeriodicFunction PeriodicFunction::from_function(double period, int order,
                                                 const std::function<double(double)>& f, bool odd,
                                                 int points) {
  if (points == 0) points = 2 * order + 2;
  const std::vector<double> x = nodes(period, points);
  std::vector<double> values(points);
  std::transform(x.begin(), x.end(), values.begin(), f);
  return from_samples(period, order, values, odd);
}

double PeriodicFunction::angular_frequency(int m) const noexcept {
  return 2.0 * std::numbers::pi * m / period_;
}

double PeriodicFunction::value(double x) const {
  const double w = angular_frequency(1);
  double sum = cos_[0];
  for (int m = 1; m <= order(); ++m) {
    const double phase = w * m * x;
    sum += cos_[m] * std::cos(phase) + sin_[m] * std::sin(phase);
  }
  return sum;
}

double PeriodicFunction::derivative(double x, int k) const {
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  if (k == 0) return value(x);
  const double w = angular_frequency(1);
  double sum = 0.0;
  for (int m = 1; m <= order(); ++m) {
    const double wm = w * m;
    const double phase = wm * x + 0.5 * std::numbers::pi * k;
    sum += std::pow(wm, k) * (cos_[m] * std::cos(phase) + sin_[m] * std::sin(phase));
  }
  return sum;
}

double PeriodicFunction::forward_difference(double x, double z) const {
  double sum = 0.0;
  for (int m = 1; m <= order(); ++m) {
    const double w = angular_frequency(m);
    const double mid = w * (x + 0.5 * z);
    sum += std::sin(0.5 * w * z) * (cos_[m] * std::sin(mid) - sin_[m] * std::cos(mid));
  }
  return 2.0 * sum;
}

double PeriodicFunction::second_difference(double x, double z) const {
  double sum = 0.0;
  for (int m = 1; m <= order(); ++m) {
    const double w = angular_frequency(m);
    const double h = std::sin(0.5 * w * z);
    sum += h * h * (cos_[m] * std::cos(w * x) + sin_[m] * std::sin(w * x));
  }
  return 4.0 * sum;
}

std::vector<double> PeriodicFunction::nodes(double period, int points) {
  std::vector<double> x(points);
  for (int j = 0; j < points; ++j) x[j] = period * j / points;
  return x;
}

std::vector<double> PeriodicFunction::samples(int points) const {
  numerics::TrigGrid grid(order(), points);
  return grid.sample(cos_, sin_);
}

PeriodicFunction PeriodicFunction::with_order(int new_order) const {
  if (new_order < 0) throw InvalidArgument("order must be non-negative");
  std::vector<double> c(new_order + 1, 0.0);
  std::vector<double> s(new_order + 1, 0.0);
  const int n = std::min(new_order, order());
  std::copy_n(cos_.begin(), n + 1, c.begin());
  std::copy_n(sin_.begin(), n + 1, s.begin());
  return {period_, std::move(c), std::move(s), odd_};
}

PeriodicFunction PeriodicFunction::with_period(double period) const {
  return {period, cos_, sin_, odd_};
}

PeriodicFunction PeriodicFunction::as_odd() const { return {period_, cos_, sin_, true}; }

PeriodicFunction PeriodicFunction::map_modes(const std::function<double(int)>& factor) const {
  std::vector<double> c(cos_.size());
  std::vector<double> s(sin_.size());
  for (int m = 0; m <= order(); ++m) {
    const double f = factor(m);
    c[m] = f * cos_[m];
    s[m] = f * sin_[m];
  }
  return {period_, std::move(c), std::move(s), odd_};
}

double PeriodicFunction::inner(const PeriodicFunction& other) const {
  if (std::abs(other.period_ - period_) > 1e-14 * period_) {
    throw InvalidArgument("inner product of functions with different periods");
  }
  const int n = std::min(order(), other.order());
  double sum = period_ * cos_[0] * other.cos_[0];
  for (int m = 1; m <= n; ++m) {
    sum += 0.5 * period_ * (cos_[m] * other.cos_[m] + sin_[m] * other.sin_[m]);
  }
  return sum;
}

double PeriodicFunction::l2_norm() const { return std::sqrt(inner(*this)); }

double PeriodicFunction::coefficient_norm() const {
  double sum = 0.0;
  for (int m = 0; m <= order(); ++m) sum += cos_[m] * cos_[m] + sin_[m] * sin_[m];
  return std::sqrt(sum);
}

double PeriodicFunction::max_abs(int points) const {
  if (points == 0) points = 4 * grid_points();
  const std::vector<double> v = samples(points);
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

bool PeriodicFunction::is_constant(double tol) const {
  for (int m = 1; m <= order(); ++m) {
    if (std::abs(cos_[m]) > tol || std::abs(sin_[m]) > tol) return false;
  }
  return true;
}

namespace {
PeriodicFunction combine(const PeriodicFunction& u, const PeriodicFunction& v, double sign) {
  if (std::abs(u.period() - v.period()) > 1e-14 * u.period()) {
    throw InvalidArgument("cannot combine functions with different periods");
  }
  const int n = std::max(u.order(), v.order());
  const PeriodicFunction up = u.with_order(n);
  const PeriodicFunction vp = v.with_order(n);
  std::vector<double> c(n + 1);
  std::vector<double> s(n + 1);
  for (int m = 0; m <= n; ++m) {
    c[m] = up.cos_coeffs()[m] + sign * vp.cos_coeffs()[m];
    s[m] = up.sin_coeffs()[m] + sign * vp.sin_coeffs()[m];
  }
  return {u.period(), std::move(c), std::move(s), u.odd() && v.odd()};
}
}  // namespace

PeriodicFunction operator+(const PeriodicFunction& u, const PeriodicFunction& v) {
  return combine(u, v, 1.0);
}

PeriodicFunction operator-(const PeriodicFunction& u, const PeriodicFunction& v) {
  return combine(u, v, -1.0);
}

PeriodicFunction operator*(double c, const PeriodicFunction& u) {
  return u.map_modes([c](int) { return c; });
}

double coefficient_distance(const PeriodicFunction& u, const PeriodicFunction& v) {
  const int n = std::max(u.order(), v.order());
  const PeriodicFunction up = u.with_order(n);
  const PeriodicFunction vp = v.with_order(n);
  double worst = 0.0;
  for (int m = 0; m <= n; ++m) {
    worst = std::max(worst, std::abs(up.cos_coeffs()[m] - vp.cos_coeffs()[m]));
    worst = std::max(worst, std::abs(up.sin_coeffs()[m] - vp.sin_coeffs()[m]));
  }
  return worst;
}

}  // namespace fracperiodic
