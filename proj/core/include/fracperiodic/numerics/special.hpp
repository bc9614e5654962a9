#pragma once

namespace fracperiodic::numerics {

/// K_nu(x) and K_{nu+1}(x) for nu >= 0, x > 0.
struct BesselKPair {
  double k_nu;
  double k_nu_plus_1;
};

/// Modified Bessel functions of the second kind by Temme's series for
/// x < 2 and Steed's continued fraction for x >= 2, followed by upward
/// recurrence in the order. Returns zeros once x exceeds the underflow
/// cutoff (x > 700).
BesselKPair bessel_k_pair(double nu, double x);

/// K_nu(x); negative orders use K_{-nu} = K_nu.
double bessel_k(double nu, double x);

/// x^nu K_nu(x), finite at x = 0 where it equals 2^{nu-1} Gamma(nu) for nu > 0.
double scaled_bessel_k(double nu, double x);

inline constexpr double kBesselUnderflowArgument = 700.0;

/// Hurwitz zeta sum_{k>=0} (q+k)^{-sigma} for sigma > 1, q > 0, by
/// direct summation of a short head plus an Euler-Maclaurin tail.
double hurwitz_zeta(double sigma, double q);

/// 1/Gamma(1+x) accurate also for small |x| (Taylor series near zero).
double reciprocal_gamma_1p(double x);

}  // namespace fracperiodic::numerics
