#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/periodic_function.hpp"

namespace fracperiodic {

/// Orthonormal real Fourier basis of the degree-N trigonometric polynomials
/// on [0, T), optionally restricted to a parity class:
///   full: 1/sqrt(T), then sqrt(2/T) cos(w_m x), sqrt(2/T) sin(w_m x) for m = 1..N
///   odd:  the sine functions only
///   even: the constant and the cosine functions
class FourierBasis {
public:
  FourierBasis(double period, int order, Symmetry symmetry = Symmetry::none);

  double period() const noexcept { return period_; }
  int order() const noexcept { return order_; }
  Symmetry symmetry() const noexcept { return symmetry_; }
  int dimension() const noexcept;

  /// Mode number and kind (true = cosine) of basis vector i.
  int mode(int i) const;
  bool is_cosine(int i) const;

  Eigen::VectorXd coordinates(const PeriodicFunction& u) const;
  PeriodicFunction function(const Eigen::VectorXd& c) const;

  /// Values of every basis function at the M nodes j T / M (M x dim).
  Eigen::MatrixXd sample_matrix(int points) const;
  /// Diagonal of (-d_xx)^s in this basis.
  Eigen::VectorXd multiplier_diagonal(const FracOrder& s) const;
  /// Galerkin matrix of multiplication by a function known by its samples
  /// on `samples.size()` equispaced nodes: int k e_i e_j by the trapezoid rule.
  Eigen::MatrixXd multiplication_matrix(const Eigen::VectorXd& samples) const;
  /// Same matrix from the coefficients of the multiplier (modes up to 2N
  /// are used), via the product-to-sum identities; O(dim^2).
  Eigen::MatrixXd multiplication_matrix(const PeriodicFunction& q) const;

private:
  double period_;
  int order_;
  Symmetry symmetry_;
};

/// Number of nodes used to multiply a degree-N function by a degree-K
/// coefficient without aliasing, padded by a factor 2.
int dealiased_points(int order, int coefficient_order);

/// L = (-d_xx)^s + k(x) assembled on the full degree-N basis.
class GalerkinOperator {
public:
  GalerkinOperator(const FracOrder& s, double period, int order, const PeriodicFunction& k);
  /// k = 0.
  GalerkinOperator(const FracOrder& s, double period, int order);

  const FracOrder& fractional_order() const noexcept { return s_; }
  double period() const noexcept { return basis_.period(); }
  int order() const noexcept { return basis_.order(); }
  const FourierBasis& basis() const noexcept { return basis_; }
  const PeriodicFunction& potential() const noexcept { return k_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  PeriodicFunction apply(const PeriodicFunction& u) const;
  /// Minimum of k over a fine grid.
  double potential_minimum() const;

private:
  FracOrder s_;
  FourierBasis basis_;
  PeriodicFunction k_;
  Eigen::MatrixXd matrix_;
};

/// gamma = max(0, -min k) + margin, the shift that makes L + gamma coercive.
double coercivity_shift(const GalerkinOperator& op, double margin = 0.1);

struct CoerciveSolution {
  PeriodicFunction u;
  double residual;            // ||(L + mu) u - g||_2
  double stability_constant;  // C in ||u|| <= C ||g||, i.e. 1 / lambda_min(L + mu)
};

/// Solves (L + mu) u = g. Throws NotCoercive when L + mu is not positive definite.
CoerciveSolution solve_coercive(const GalerkinOperator& op, double mu, const PeriodicFunction& g);

struct KernelBasis {
  std::vector<PeriodicFunction> vectors;  // orthonormal in L2(0, T)
  double threshold;                       // |eigenvalue| below this counts as zero
  std::size_t dimension() const noexcept { return vectors.size(); }
};

struct FredholmResult {
  PeriodicFunction solution;  // unique solution, or the minimal-norm one
  KernelBasis kernel;         // empty when the solution is unique
  double residual;
  bool unique() const noexcept { return kernel.vectors.empty(); }
};

/// Numerical kernel of L: eigenvectors whose eigenvalue is below
/// `relative_threshold` times the largest eigenvalue magnitude.
KernelBasis numerical_kernel(const GalerkinOperator& op, double relative_threshold = 1e-9);

/// Either the unique solution of L u = g, or (when L has a kernel and g is
/// orthogonal to it) the minimal-norm solution together with the kernel.
/// Throws SolvabilityViolation with the offending <g, v> otherwise.
FredholmResult solve_fredholm(const GalerkinOperator& op, const PeriodicFunction& g,
                              double relative_threshold = 1e-9, double orthogonality_tol = 1e-9);

struct EigenPair {
  double lambda;
  PeriodicFunction eigenfunction;  // unit L2 norm
};

/// Lowest `count` eigenpairs of L, nondecreasing.
std::vector<EigenPair> eigenvalue_set(const GalerkinOperator& op, int count);

struct SchrodingerSpectrum {
  std::vector<EigenPair> pairs;  // eigenpairs of A^s
  Eigen::MatrixXd a;             // Galerkin matrix of -d_xx + V
  Eigen::MatrixXd a_power;       // Q diag(lambda^s) Q^T
};

/// Spectrum of (-d_xx + V)^s with V >= 0, built as a matrix power of the
/// Galerkin matrix of -d_xx + V and diagonalized again. `order` defaults
/// to max(32, 4 * order(V)). Throws NegativePotential if V < 0 on the grid.
SchrodingerSpectrum schrodinger_fractional_spectrum(const PeriodicFunction& V, const FracOrder& s,
                                                    int count, int order = 0);

}  // namespace fracperiodic
