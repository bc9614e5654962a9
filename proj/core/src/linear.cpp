#include "fracperiodic/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/spectral.hpp"

namespace fracperiodic {

FourierBasis::FourierBasis(double period, int order, Symmetry symmetry)
    : period_(period), order_(order), symmetry_(symmetry) {
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  if (order < 0 || (symmetry == Symmetry::odd && order < 1)) {
    throw InvalidArgument("basis order too small");
  }
}

int FourierBasis::dimension() const noexcept {
  switch (symmetry_) {
    case Symmetry::odd: return order_;
    case Symmetry::even: return order_ + 1;
    case Symmetry::none: break;
  }
  return 2 * order_ + 1;
}

int FourierBasis::mode(int i) const {
  switch (symmetry_) {
    case Symmetry::odd: return i + 1;
    case Symmetry::even: return i;
    case Symmetry::none: break;
  }
  return (i + 1) / 2;
}

bool FourierBasis::is_cosine(int i) const {
  switch (symmetry_) {
    case Symmetry::odd: return false;
    case Symmetry::even: return true;
    case Symmetry::none: break;
  }
  return i == 0 || i % 2 == 1;
}

Eigen::VectorXd FourierBasis::coordinates(const PeriodicFunction& u) const {
  if (std::abs(u.period() - period_) > 1e-14 * period_) {
    throw InvalidArgument("function period does not match the basis");
  }
  const double c0 = std::sqrt(period_);
  const double cm = std::sqrt(0.5 * period_);
  Eigen::VectorXd c(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const int m = mode(i);
    if (m > u.order()) {
      c(i) = 0.0;
    } else if (is_cosine(i)) {
      c(i) = (m == 0 ? c0 : cm) * u.cos_coeff(m);
    } else {
      c(i) = cm * u.sin_coeff(m);
    }
  }
  return c;
}

PeriodicFunction FourierBasis::function(const Eigen::VectorXd& c) const {
  if (c.size() != dimension()) throw InvalidArgument("coordinate vector has wrong size");
  std::vector<double> cos_c(order_ + 1, 0.0);
  std::vector<double> sin_c(order_ + 1, 0.0);
  const double c0 = 1.0 / std::sqrt(period_);
  const double cm = std::sqrt(2.0 / period_);
  for (int i = 0; i < dimension(); ++i) {
    const int m = mode(i);
    if (is_cosine(i)) {
      cos_c[m] = (m == 0 ? c0 : cm) * c(i);
    } else {
      sin_c[m] = cm * c(i);
    }
  }
  return {period_, std::move(cos_c), std::move(sin_c), symmetry_ == Symmetry::odd};
}

Eigen::MatrixXd FourierBasis::sample_matrix(int points) const {
  Eigen::MatrixXd b(points, dimension());
  const double c0 = 1.0 / std::sqrt(period_);
  const double cm = std::sqrt(2.0 / period_);
  for (int j = 0; j < points; ++j) {
    const double x = period_ * j / points;
    for (int i = 0; i < dimension(); ++i) {
      const int m = mode(i);
      const double phase = 2.0 * std::numbers::pi * m * x / period_;
      if (m == 0) {
        b(j, i) = c0;
      } else {
        b(j, i) = cm * (is_cosine(i) ? std::cos(phase) : std::sin(phase));
      }
    }
  }
  return b;
}

Eigen::VectorXd FourierBasis::multiplier_diagonal(const FracOrder& s) const {
  Eigen::VectorXd d(dimension());
  for (int i = 0; i < dimension(); ++i) d(i) = s.multiplier(2.0 * std::numbers::pi * mode(i) / period_);
  return d;
}

Eigen::MatrixXd FourierBasis::multiplication_matrix(const Eigen::VectorXd& samples) const {
  const int points = static_cast<int>(samples.size());
  const Eigen::MatrixXd b = sample_matrix(points);
  const Eigen::VectorXd w = samples * (period_ / points);
  Eigen::MatrixXd k = b.transpose() * w.asDiagonal() * b;
  return 0.5 * (k + k.transpose());
}

Eigen::MatrixXd FourierBasis::multiplication_matrix(const PeriodicFunction& q) const {
  // C_k = (1/T) int q cos(k w x), S_k = (1/T) int q sin(k w x), k >= 0.
  const int top = 2 * order_;
  std::vector<double> c(top + 1, 0.0);
  std::vector<double> sn(top + 1, 0.0);
  for (int k = 0; k <= std::min(top, q.order()); ++k) {
    c[k] = k == 0 ? q.cos_coeff(0) : 0.5 * q.cos_coeff(k);
    sn[k] = k == 0 ? 0.0 : 0.5 * q.sin_coeff(k);
  }
  const auto cc = [&](int k) { return c[std::abs(k)]; };
  const auto ss = [&](int k) { return k >= 0 ? sn[k] : -sn[-k]; };
  const double root2 = std::sqrt(2.0);

  const int dim = dimension();
  Eigen::MatrixXd k(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int m = mode(i);
    const bool ci = is_cosine(i);
    for (int j = 0; j <= i; ++j) {
      const int n = mode(j);
      const bool cj = is_cosine(j);
      double v;
      if (m == 0 && n == 0) {
        v = cc(0);
      } else if (m == 0 || n == 0) {
        const int p = m + n;
        const bool cos_side = m == 0 ? cj : ci;
        v = root2 * (cos_side ? cc(p) : ss(p));
      } else if (ci && cj) {
        v = cc(m - n) + cc(m + n);
      } else if (!ci && !cj) {
        v = cc(m - n) - cc(m + n);
      } else if (!ci) {  // sin_m cos_n
        v = ss(m + n) + ss(m - n);
      } else {  // cos_m sin_n
        v = ss(m + n) + ss(n - m);
      }
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

int dealiased_points(int order, int coefficient_order) {
  return std::max(2 * (2 * order + 2), 2 * order + coefficient_order + 2);
}

GalerkinOperator::GalerkinOperator(const FracOrder& s, double period, int order,
                                   const PeriodicFunction& k)
    : s_(s), basis_(period, order), k_(k) {
  if (std::abs(k.period() - period) > 1e-14 * period) {
    throw InvalidArgument("coefficient period does not match the operator");
  }
  matrix_ = basis_.multiplier_diagonal(s).asDiagonal();
  if (!k.is_constant() || k.cos_coeff(0) != 0.0) {
    const int points = dealiased_points(order, k.order());
    const std::vector<double> values = k.samples(points);
    matrix_ += basis_.multiplication_matrix(
        Eigen::Map<const Eigen::VectorXd>(values.data(), points));
  }
}

GalerkinOperator::GalerkinOperator(const FracOrder& s, double period, int order)
    : GalerkinOperator(s, period, order, PeriodicFunction::zero(period, 0)) {}

PeriodicFunction GalerkinOperator::apply(const PeriodicFunction& u) const {
  return basis_.function(matrix_ * basis_.coordinates(u));
}

double GalerkinOperator::potential_minimum() const {
  const std::vector<double> values = k_.samples(std::max(64, 8 * k_.order() + 2));
  return *std::min_element(values.begin(), values.end());
}

double coercivity_shift(const GalerkinOperator& op, double margin) {
  return std::max(0.0, -op.potential_minimum()) + margin;
}

CoerciveSolution solve_coercive(const GalerkinOperator& op, double mu, const PeriodicFunction& g) {
  const FourierBasis& basis = op.basis();
  Eigen::MatrixXd a = op.matrix();
  a.diagonal().array() += mu;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues()(0);
  if (!(lambda_min > 0.0)) {
    throw NotCoercive("L + mu has a non-positive eigenvalue; increase the shift", lambda_min);
  }
  const Eigen::VectorXd rhs = basis.coordinates(g);
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  const Eigen::VectorXd c = llt.solve(rhs);
  return {basis.function(c), (a * c - rhs).norm(), 1.0 / lambda_min};
}

namespace {

struct Decomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  double threshold;
};

Decomposition decompose(const GalerkinOperator& op, double relative_threshold) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.matrix());
  const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
  return {eig.eigenvalues(), eig.eigenvectors(), relative_threshold * std::max(scale, 1e-300)};
}

}  // namespace

KernelBasis numerical_kernel(const GalerkinOperator& op, double relative_threshold) {
  const Decomposition d = decompose(op, relative_threshold);
  KernelBasis kernel{{}, d.threshold};
  for (int i = 0; i < d.values.size(); ++i) {
    if (std::abs(d.values(i)) < d.threshold) {
      kernel.vectors.push_back(op.basis().function(d.vectors.col(i)));
    }
  }
  return kernel;
}

FredholmResult solve_fredholm(const GalerkinOperator& op, const PeriodicFunction& g,
                              double relative_threshold, double orthogonality_tol) {
  const FourierBasis& basis = op.basis();
  const Decomposition d = decompose(op, relative_threshold);
  const Eigen::VectorXd rhs = basis.coordinates(g);
  const double tol = orthogonality_tol * std::max(1.0, rhs.norm());

  KernelBasis kernel{{}, d.threshold};
  Eigen::VectorXd c = Eigen::VectorXd::Zero(rhs.size());
  for (int i = 0; i < d.values.size(); ++i) {
    const double projection = d.vectors.col(i).dot(rhs);
    if (std::abs(d.values(i)) < d.threshold) {
      if (std::abs(projection) > tol) {
        throw SolvabilityViolation("right-hand side is not orthogonal to the kernel of L",
                                   projection);
      }
      kernel.vectors.push_back(basis.function(d.vectors.col(i)));
    } else {
      c += (projection / d.values(i)) * d.vectors.col(i);
    }
  }
  const double residual = (op.matrix() * c - rhs).norm();
  return {basis.function(c), std::move(kernel), residual};
}

std::vector<EigenPair> eigenvalue_set(const GalerkinOperator& op, int count) {
  const int dim = op.basis().dimension();
  if (count < 0 || count > dim) throw InvalidArgument("eigenpair count exceeds 2N+1");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.matrix());
  std::vector<EigenPair> pairs;
  for (int i = 0; i < count; ++i) {
    pairs.push_back({eig.eigenvalues()(i), op.basis().function(eig.eigenvectors().col(i))});
  }
  return pairs;
}

SchrodingerSpectrum schrodinger_fractional_spectrum(const PeriodicFunction& V, const FracOrder& s,
                                                    int count, int order) {
  if (order <= 0) order = std::max(32, 4 * V.order());
  const int check_points = std::max(256, 16 * V.order() + 2);
  const std::vector<double> grid = V.samples(check_points);
  const double v_min = *std::min_element(grid.begin(), grid.end());
  if (v_min < 0.0) throw NegativePotential("potential must be nonnegative on the grid", v_min);

  const FourierBasis basis(V.period(), order);
  const int dim = basis.dimension();
  if (count < 0 || count > dim) throw InvalidArgument("eigenpair count exceeds 2N+1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double w = 2.0 * std::numbers::pi * basis.mode(i) / V.period();
    a(i, i) = w * w;
  }
  const int points = dealiased_points(order, V.order());
  const std::vector<double> values = V.samples(points);
  a += basis.multiplication_matrix(Eigen::Map<const Eigen::VectorXd>(values.data(), points));

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_a(a);
  const Eigen::VectorXd powered =
      eig_a.eigenvalues().unaryExpr([&](double l) { return std::pow(std::max(l, 0.0), s.s()); });
  Eigen::MatrixXd a_power = eig_a.eigenvectors() * powered.asDiagonal() *
                            eig_a.eigenvectors().transpose();
  a_power = 0.5 * (a_power + a_power.transpose());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_p(a_power);
  SchrodingerSpectrum out{{}, a, a_power};
  for (int i = 0; i < count; ++i) {
    out.pairs.push_back({eig_p.eigenvalues()(i), basis.function(eig_p.eigenvectors().col(i))});
  }
  return out;
}

}  // namespace fracperiodic
