#pragma once

#include <span>
#include <vector>

namespace fracperiodic::numerics {

/// Trigonometric transforms (FFT based) between the coefficients of a degree-N
/// real trigonometric polynomial and its samples on M equispaced nodes
/// x_j = j T / M. Requires M > 2N so that analysis is exact for degree <= N.
///
/// Coefficient arrays have N+1 entries; `sin_c[0]` is ignored on input and
/// written as 0 on output.
class TrigGrid {
public:
  TrigGrid(int order, int points);

  int order() const noexcept { return order_; }
  int points() const noexcept { return points_; }

  void synthesize(std::span<const double> cos_c, std::span<const double> sin_c,
                  std::span<double> samples) const;
  void analyze(std::span<const double> samples, std::span<double> cos_c,
               std::span<double> sin_c) const;

  /// Samples of the polynomial on the M grid nodes.
  std::vector<double> sample(std::span<const double> cos_c, std::span<const double> sin_c) const;

private:
  int order_;
  int points_;
};

}  // namespace fracperiodic::numerics
