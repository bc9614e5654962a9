#include "fracperiodic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/numerics/quadrature.hpp"
#include "fracperiodic/numerics/special.hpp"

namespace fracperiodic {

namespace {

constexpr int kPanelNodes = 20;
constexpr int kMaxLevel = 5;

// Rule for  int_0^inf g(z) z^{-sigma} dz  with g T-periodic, g(z) = O(z^2).
// Folding the images gives  int_0^T g(z) [z^{-sigma} + T^{-sigma} zeta(sigma, 1 + z/T)] dz.
// On the first panel the factor z^{2-sigma} is carried by a Gauss-Jacobi rule
// applied to g(z)/z^2, so every weight below multiplies a plain g(z_i).
struct KernelRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename G>
  double integrate(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * g(nodes[i]);
    return sum;
  }
};

KernelRule make_kernel_rule(double period, double sigma, double max_frequency, int level) {
  const double refine = std::ldexp(1.0, -level);
  const double wave = max_frequency > 0.0 ? std::numbers::pi / max_frequency : period;
  const double max_width = std::min(period, wave) * refine;
  const double first = 0.25 * max_width;
  const double image_scale = std::pow(period, -sigma);
  const auto image_weight = [&](double z) {
    return image_scale * numerics::hurwitz_zeta(sigma, 1.0 + z / period);
  };

  KernelRule rule;
  const numerics::QuadratureRule head =
      numerics::gauss_jacobi_left(kPanelNodes, 0.0, first, 2.0 - sigma);
  for (std::size_t i = 0; i < head.size(); ++i) {
    const double z = head.nodes[i];
    rule.nodes.push_back(z);
    rule.weights.push_back(head.weights[i] / (z * z));
  }
  const numerics::QuadratureRule head_images = numerics::gauss_legendre(kPanelNodes, 0.0, first);
  for (std::size_t i = 0; i < head_images.size(); ++i) {
    const double z = head_images.nodes[i];
    rule.nodes.push_back(z);
    rule.weights.push_back(head_images.weights[i] * image_weight(z));
  }
  const std::vector<double> edges =
      numerics::graded_panel_edges(period - first, first, max_width);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const numerics::QuadratureRule panel =
        numerics::gauss_legendre(kPanelNodes, first + edges[k], first + edges[k + 1]);
    for (std::size_t i = 0; i < panel.size(); ++i) {
      const double z = panel.nodes[i];
      rule.nodes.push_back(z);
      rule.weights.push_back(panel.weights[i] * (std::pow(z, -sigma) + image_weight(z)));
    }
  }
  return rule;
}

double max_frequency(const PeriodicFunction& u) {
  int top = 0;
  for (int m = u.order(); m > 0; --m) {
    if (u.cos_coeff(m) != 0.0 || u.sin_coeff(m) != 0.0) {
      top = m;
      break;
    }
  }
  return u.angular_frequency(top);
}

// Integrates with successively refined rules until two levels agree.
template <typename G>
double refined_kernel_integral(double period, double sigma, double frequency, double tol, G&& g) {
  double previous = make_kernel_rule(period, sigma, frequency, 0).integrate(g);
  double change = 0.0;
  for (int level = 1; level <= kMaxLevel; ++level) {
    const double current = make_kernel_rule(period, sigma, frequency, level).integrate(g);
    change = std::abs(current - previous);
    if (change <= tol * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  throw QuadratureNonConvergence("singular kernel quadrature stalled before tolerance", change);
}

}  // namespace

PeriodicFunction frac_laplacian(const PeriodicFunction& u, const FracOrder& s) {
  return u.map_modes([&](int m) { return s.multiplier(u.angular_frequency(m)); });
}

double spectral_energy(const PeriodicFunction& u, const FracOrder& s) {
  double sum = 0.0;
  for (int m = 1; m <= u.order(); ++m) {
    const double power = u.cos_coeff(m) * u.cos_coeff(m) + u.sin_coeff(m) * u.sin_coeff(m);
    sum += s.multiplier(u.angular_frequency(m)) * power;
  }
  return 0.5 * u.period() * sum;
}

double singular_integral_oracle(const PeriodicFunction& u, const FracOrder& s, double x,
                                double quad_tol) {
  if (!(quad_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  const auto integrand = [&](double z) { return u.second_difference(x, z); };
  // The kernel integral is scaled by C_sing afterwards; tighten accordingly.
  const double tol = quad_tol / std::max(1.0, s.c_sing());
  return s.c_sing() * refined_kernel_integral(u.period(), 1.0 + 2.0 * s.s(), max_frequency(u),
                                              tol, integrand);
}

double gagliardo_energy(const PeriodicFunction& u, const FracOrder& s, double quad_tol) {
  if (!(quad_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (u.is_constant()) return 0.0;
  const double period = u.period();
  const double sigma = 1.0 + 2.0 * s.s();
  const double frequency = 2.0 * max_frequency(u);
  // The inner integral is a trigonometric polynomial of degree 2N in x, so
  // the trapezoid rule on 2N+2 points integrates it exactly.
  const int points = 2 * u.order() + 2;
  const std::vector<double> xs = PeriodicFunction::nodes(period, points);
  std::vector<KernelRule> rules;
  rules.push_back(make_kernel_rule(period, sigma, frequency, 0));

  const auto total_at_level = [&](int level) {
    while (static_cast<int>(rules.size()) <= level) {
      rules.push_back(make_kernel_rule(period, sigma, frequency, static_cast<int>(rules.size())));
    }
    double sum = 0.0;
    for (double x : xs) {
      sum += rules[level].integrate([&](double z) {
        const double left = u.forward_difference(x, -z);
        const double right = u.forward_difference(x, z);
        return left * left + right * right;
      });
    }
    return 0.5 * s.c_sing() * sum * period / points;
  };

  double previous = total_at_level(0);
  double change = 0.0;
  for (int level = 1; level <= kMaxLevel; ++level) {
    const double current = total_at_level(level);
    change = std::abs(current - previous);
    if (change <= quad_tol * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  throw QuadratureNonConvergence("Gagliardo energy quadrature stalled before tolerance", change);
}

double potential_integral(const PeriodicFunction& u, const DoubleWell& F) {
  // F(u) is a trigonometric polynomial of degree deg(F) * N.
  const int points = std::max(1, F.degree()) * u.order() + 2;
  const std::vector<double> values = u.samples(points);
  double sum = 0.0;
  for (double v : values) sum += F(v);
  return sum * u.period() / points;
}

double half_period_potential(const PeriodicFunction& u, const DoubleWell& F) {
  // Integrate the trigonometric polynomial F(u) termwise over [0, T/2]:
  // cosines vanish, sin(w_m x) contributes 2 / w_m for odd m.
  const int order = std::max(1, F.degree()) * u.order();
  std::vector<double> values = u.samples(2 * order + 2);
  for (double& v : values) v = F(v);
  const PeriodicFunction f = PeriodicFunction::from_samples(u.period(), order, values);
  double sum = 0.5 * u.period() * f.cos_coeff(0);
  for (int m = 1; m <= order; m += 2) sum += 2.0 * f.sin_coeff(m) / f.angular_frequency(m);
  return sum;
}

EnergyParts energy_parts(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F) {
  return {0.25 * spectral_energy(u, s) / s.d_s(), half_period_potential(u, F)};
}

double energy_functional(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F) {
  return energy_parts(u, s, F).total();
}

EnergyParts variational_energy_parts(const PeriodicFunction& u, const FracOrder& s,
                                     const DoubleWell& F) {
  return {0.25 * spectral_energy(u, s), 0.5 * potential_integral(u, F)};
}

double variational_energy(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F) {
  return variational_energy_parts(u, s, F).total();
}

PeriodicFunction semilinear_residual(const PeriodicFunction& u, const FracOrder& s,
                                     const DoubleWell& F) {
  const int points = std::max(2, F.degree()) * u.order() + 2;
  std::vector<double> values = u.samples(points);
  for (double& v : values) v = F.d1(v);
  const PeriodicFunction force =
      PeriodicFunction::from_samples(u.period(), u.order(), values, false);
  PeriodicFunction r = frac_laplacian(u, s) + force;
  if (u.odd() && F.is_even()) {
    // F' is odd, so F'(u) is odd; drop round-off cosine content.
    std::vector<double> sin(r.sin_coeffs().begin(), r.sin_coeffs().end());
    return PeriodicFunction(u.period(), std::vector<double>(sin.size(), 0.0), sin, true);
  }
  return r;
}

}  // namespace fracperiodic
