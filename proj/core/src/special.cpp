#include "fracperiodic/numerics/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracperiodic/errors.hpp"

namespace fracperiodic::numerics {
namespace {

// Taylor coefficients of 1/Gamma(1+x) about x = 0.
constexpr std::array<double, 22> kRecipGammaTaylor = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2,
// evaluated from the even/odd parts of the Taylor series so mu -> 0 is exact.
void temme_gammas(double mu, double& gam1, double& gam2) {
  const double mu2 = mu * mu;
  double odd = 0.0;
  double even = 0.0;
  double power = 1.0;
  for (std::size_t k = 0; k + 1 < kRecipGammaTaylor.size(); k += 2) {
    even += kRecipGammaTaylor[k] * power;
    odd += kRecipGammaTaylor[k + 1] * power;
    power *= mu2;
  }
  gam1 = -odd;
  gam2 = even;
}

constexpr double kEps = 1e-17;
constexpr int kMaxIter = 20000;

}  // namespace

double reciprocal_gamma_1p(double x) {
  if (std::abs(x) <= 0.5) {
    double sum = 0.0;
    for (std::size_t k = kRecipGammaTaylor.size(); k-- > 0;) sum = sum * x + kRecipGammaTaylor[k];
    return sum;
  }
  return 1.0 / std::tgamma(1.0 + x);
}

BesselKPair bessel_k_pair(double nu, double x) {
  if (!(x > 0.0) || !(nu >= 0.0) || !std::isfinite(x) || !std::isfinite(nu)) {
    throw BesselEvalFailure("bessel_k requires x > 0 and nu >= 0");
  }
  if (x > kBesselUnderflowArgument) return {0.0, 0.0};

  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;  // in [-1/2, 1/2)
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double k_mu = 0.0;
  double k_mu1 = 0.0;

  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < 1e-300 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-300 ? 1.0 : std::sinh(e) / e;
    double gam1 = 0.0;
    double gam2 = 0.0;
    temme_gammas(mu, gam1, gam2);
    const double gampl = reciprocal_gamma_1p(mu);
    const double gammi = reciprocal_gamma_1p(-mu);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw BesselEvalFailure("Temme series did not converge");
    k_mu = sum;
    k_mu1 = sum1 * xi2;
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw BesselEvalFailure("Steed continued fraction did not converge");
    h = a1 * h;
    k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
  }

  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return {k_mu, k_mu1};
}

double bessel_k(double nu, double x) { return bessel_k_pair(std::abs(nu), x).k_nu; }

double scaled_bessel_k(double nu, double x) {
  nu = std::abs(nu);
  if (x == 0.0) {
    if (nu == 0.0) return std::numeric_limits<double>::infinity();
    return std::exp2(nu - 1.0) * std::tgamma(nu);
  }
  if (x > kBesselUnderflowArgument) return 0.0;
  return std::pow(x, nu) * bessel_k(nu, x);
}

double hurwitz_zeta(double sigma, double q) {
  if (!(sigma > 1.0) || !(q > 0.0)) throw InvalidArgument("hurwitz_zeta requires sigma > 1 and q > 0");
  constexpr double kShift = 12.0;
  double sum = 0.0;
  double base = q;
  while (base < kShift) {
    sum += std::pow(base, -sigma);
    base += 1.0;
  }
  // Euler-Maclaurin tail from `base` to infinity.
  constexpr std::array<double, 9> kB2j = {1.0 / 6.0,      -1.0 / 30.0, 1.0 / 42.0,
                                          -1.0 / 30.0,    5.0 / 66.0,  -691.0 / 2730.0,
                                          7.0 / 6.0,      -3617.0 / 510.0, 43867.0 / 798.0};
  double tail = std::pow(base, 1.0 - sigma) / (sigma - 1.0) + 0.5 * std::pow(base, -sigma);
  double rising = sigma;                 // (sigma)_{2j-1}
  double factorial = 2.0;                // (2j)!
  double power = std::pow(base, -sigma - 1.0);  // base^{-sigma-2j+1}
  const double inv_base2 = 1.0 / (base * base);
  for (std::size_t j = 1; j <= kB2j.size(); ++j) {
    tail += kB2j[j - 1] / factorial * rising * power;
    const double k = 2.0 * static_cast<double>(j);
    rising *= (sigma + k - 1.0) * (sigma + k);
    factorial *= (k + 1.0) * (k + 2.0);
    power *= inv_base2;
  }
  return sum + tail;
}

}  // namespace fracperiodic::numerics
