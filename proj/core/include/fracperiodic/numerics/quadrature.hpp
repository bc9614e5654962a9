#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracperiodic::numerics {

/// A list of nodes and weights. What the weights integrate against (plain
/// measure or an algebraic weight) is fixed by whoever built the rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }

  /// Appends `other` (used to build composite rules panel by panel).
  void append(const QuadratureRule& other);
};

/// Gauss-Legendre rule for the plain integral over [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1, via Golub-Welsch.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Rule for  int_a^b f(y) (y-a)^beta dy  (weight singular at the left end).
QuadratureRule gauss_jacobi_left(int n, double a, double b, double beta);

/// Composite rule for  int_0^{y_max} f(y) y^alpha dy.
///
/// The first panel [0, y_min] carries the exact Jacobi weight; the rest of
/// the interval is covered by Gauss-Legendre panels whose width grows
/// geometrically (factor 1/ratio) up to `max_width`. The weights of the
/// Legendre panels include y^alpha, so every node integrates f directly.
struct GradedRuleSpec {
  double alpha = 0.0;
  double y_min = 1e-6;
  double y_max = 1.0;
  double ratio = 0.35;
  double max_width = 1.0;
  int nodes_per_panel = 16;
};
QuadratureRule graded_weighted_rule(const GradedRuleSpec& spec);

/// Panel boundaries on [0, length] that start with width `first_width`,
/// grow by doubling while the panel stays within its distance from 0, and
/// are capped at `max_width`.
std::vector<double> graded_panel_edges(double length, double first_width, double max_width);

/// Adaptive double-exponential quadrature over [a, b] that tolerates
/// integrable algebraic endpoint singularities. Converged when the error
/// estimate is below rel_tol * int |f| or below abs_tol.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, double abs_tol = 0.0);

}  // namespace fracperiodic::numerics
