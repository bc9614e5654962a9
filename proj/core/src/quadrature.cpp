#include "fracperiodic/numerics/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "fracperiodic/errors.hpp"

namespace fracperiodic::numerics {

void QuadratureRule::append(const QuadratureRule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw InvalidArgument("quadrature order must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw InvalidArgument("Jacobi exponents must exceed -1");

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double two_k_ab = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (two_k_ab * two_k_ab * (two_k_ab + 1.0) * (two_k_ab - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  QuadratureRule ref = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    ref.nodes[i] = mid + half * ref.nodes[i];
    ref.weights[i] *= half;
  }
  return ref;
}

QuadratureRule gauss_jacobi_left(int n, double a, double b, double beta) {
  QuadratureRule ref = gauss_jacobi(n, 0.0, beta);
  const double half = 0.5 * (b - a);
  const double scale = std::pow(half, beta + 1.0);
  for (int i = 0; i < n; ++i) {
    ref.nodes[i] = a + half * (1.0 + ref.nodes[i]);
    ref.weights[i] *= scale;
  }
  return ref;
}

std::vector<double> graded_panel_edges(double length, double first_width, double max_width) {
  if (!(length > 0.0) || !(first_width > 0.0) || !(max_width > 0.0)) {
    throw InvalidArgument("panel edges need positive length and widths");
  }
  std::vector<double> edges{0.0};
  double left = 0.0;
  double width = std::min(first_width, length);
  while (left < length) {
    double right = left + width;
    // avoid a sliver as the final panel
    if (right > length || length - right < 0.25 * width) right = length;
    edges.push_back(right);
    left = right;
    width = std::min(max_width, std::max(width, left));
  }
  return edges;
}

QuadratureRule graded_weighted_rule(const GradedRuleSpec& spec) {
  if (!(spec.y_max > spec.y_min) || !(spec.y_min > 0.0)) {
    throw InvalidArgument("graded rule needs 0 < y_min < y_max");
  }
  if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) throw InvalidArgument("grading ratio must lie in (0,1)");

  // Panel edges from y_min upward: geometric growth capped at max_width.
  std::vector<double> edges{spec.y_min};
  double left = spec.y_min;
  while (left < spec.y_max) {
    double width = std::min(spec.max_width, left * (1.0 / spec.ratio - 1.0));
    double right = left + width;
    if (right > spec.y_max || spec.y_max - right < 0.25 * width) right = spec.y_max;
    edges.push_back(right);
    left = right;
  }

  QuadratureRule rule = gauss_jacobi_left(spec.nodes_per_panel, 0.0, spec.y_min, spec.alpha);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    QuadratureRule panel = gauss_legendre(spec.nodes_per_panel, edges[k], edges[k + 1]);
    for (std::size_t i = 0; i < panel.size(); ++i) {
      panel.weights[i] *= std::pow(panel.nodes[i], spec.alpha);
    }
    rule.append(panel);
  }
  return rule;
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  // Slivers too thin for the node layout: the midpoint rule is exact to round-off.
  if (std::abs(b - a) < 1e-10 * std::max(std::abs(a), std::abs(b))) return (b - a) * f(0.5 * (a + b));
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max({1e3 * rel_tol * l1, abs_tol, 1e-300}) + 1e-14 * l1) {
    throw QuadratureNonConvergence("tanh-sinh quadrature did not reach tolerance", error);
  }
  return value;
}

}  // namespace fracperiodic::numerics
