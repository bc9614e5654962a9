#include "fracperiodic/double_well.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracperiodic/errors.hpp"

namespace fracperiodic {

DoubleWell::DoubleWell(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw InvalidArgument("potential needs at least one coefficient");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidArgument("non-finite potential coefficient");
  }
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

DoubleWell DoubleWell::quartic(double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("quartic scale must be positive");
  return DoubleWell({0.25 * scale, 0.0, -0.5 * scale, 0.0, 0.25 * scale});
}

DoubleWell DoubleWell::from_taylor(const std::vector<double>& derivatives_at_zero) {
  std::vector<double> c(derivatives_at_zero.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    c[k] = derivatives_at_zero[k] / factorial;
  }
  return DoubleWell(std::move(c));
}

double DoubleWell::derivative(double u, int k) const {
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  // Horner on the k-th derivative polynomial.
  double sum = 0.0;
  for (int j = degree(); j >= k; --j) {
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
    sum = sum * u + falling * coeffs_[j];
  }
  return sum;
}

std::vector<double> DoubleWell::taylor_at_zero() const {
  std::vector<double> d(coeffs_.size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    d[k] = coeffs_[k] * factorial;
  }
  return d;
}

bool DoubleWell::is_even() const noexcept {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (coeffs_[k] != 0.0) return false;
  }
  return true;
}

double DoubleWell::max_abs_d2_on_wells() const {
  double best = 0.0;
  for (int i = 0; i <= 400; ++i) {
    best = std::max(best, std::abs(d2(-1.0 + i / 200.0)));
  }
  return best;
}

void DoubleWell::validate(int samples) const {
  const double scale = std::max(1.0, std::abs(value(0.0)));
  const double tol = 1e-12 * scale;
  if (std::abs(value(1.0)) > tol || std::abs(value(-1.0)) > tol) {
    throw InvalidArgument("potential must vanish at the wells +-1");
  }
  if (std::abs(d1(1.0)) > tol || std::abs(d1(-1.0)) > tol) {
    throw InvalidArgument("potential must be stationary at the wells +-1");
  }
  double previous_u = -1.0;
  double previous = value(-1.0);
  for (int i = 1; i < samples; ++i) {
    const double u = -1.0 + 2.0 * i / samples;
    const double f = value(u);
    if (!(f > 0.0)) throw InvalidArgument("potential must be positive between the wells");
    if (u <= 0.0 && f < previous - tol) {
      throw InvalidArgument("potential must be nondecreasing on (-1,0)");
    }
    if (previous_u >= 0.0 && f > previous + tol) {
      throw InvalidArgument("potential must be nonincreasing on (0,1)");
    }
    previous_u = u;
    previous = f;
  }
}

std::string DoubleWell::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "poly[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out << (k ? "," : "") << coeffs_[k];
  out << "]";
  return out.str();
}

}  // namespace fracperiodic
