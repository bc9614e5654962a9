#include "fracperiodic/numerics/trig_grid.hpp"

#include <algorithm>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "fracperiodic/errors.hpp"

namespace fracperiodic::numerics {

TrigGrid::TrigGrid(int order, int points) : order_(order), points_(points) {
  if (order < 0 || points <= 2 * order) {
    throw InvalidArgument("TrigGrid needs points > 2 * order");
  }
}

void TrigGrid::synthesize(std::span<const double> cos_c, std::span<const double> sin_c,
                          std::span<double> samples) const {
  if (static_cast<int>(samples.size()) != points_) throw InvalidArgument("sample buffer size");
  if (cos_c.size() != sin_c.size()) throw InvalidArgument("coefficient arrays differ in size");
  const int n = std::min<int>(order_, static_cast<int>(cos_c.size()) - 1);
  std::vector<std::complex<double>> spectrum(points_, 0.0);
  if (!cos_c.empty()) spectrum[0] = static_cast<double>(points_) * cos_c[0];
  const double half = 0.5 * points_;
  for (int m = 1; m <= n; ++m) {
    spectrum[m] = half * std::complex<double>(cos_c[m], -sin_c[m]);
    spectrum[points_ - m] = std::conj(spectrum[m]);
  }
  // The plan cache lives in the FFT object, so each call owns its own.
  Eigen::FFT<double> fft;
  std::vector<double> out;
  fft.inv(out, spectrum);
  std::copy(out.begin(), out.end(), samples.begin());
}

void TrigGrid::analyze(std::span<const double> samples, std::span<double> cos_c,
                       std::span<double> sin_c) const {
  if (static_cast<int>(samples.size()) != points_) throw InvalidArgument("sample buffer size");
  if (cos_c.size() != sin_c.size()) throw InvalidArgument("coefficient arrays differ in size");
  const int n = static_cast<int>(cos_c.size()) - 1;
  if (n > order_) throw InvalidArgument("analysis order exceeds grid order");
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, in);
  const double inv = 1.0 / points_;
  cos_c[0] = spectrum[0].real() * inv;
  sin_c[0] = 0.0;
  for (int m = 1; m <= n; ++m) {
    cos_c[m] = 2.0 * inv * spectrum[m].real();
    sin_c[m] = -2.0 * inv * spectrum[m].imag();
  }
}

std::vector<double> TrigGrid::sample(std::span<const double> cos_c,
                                     std::span<const double> sin_c) const {
  std::vector<double> out(points_);
  synthesize(cos_c, sin_c, out);
  return out;
}

}  // namespace fracperiodic::numerics
