#include "fracperiodic/bifurcation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/linear.hpp"
#include "fracperiodic/semilinear.hpp"

namespace fracperiodic {

const char* to_string(Criticality c) noexcept {
  switch (c) {
    case Criticality::supercritical: return "supercritical";
    case Criticality::subcritical: return "subcritical";
    case Criticality::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double curvature(const DoubleWell& F) {
  const double kappa = -F.d2(0.0);
  if (!(kappa > 0.0)) throw InvalidArgument("bifurcation analysis needs F''(0) < 0");
  return kappa;
}

// G and its derivatives in orthonormal sine coordinates on period 2 pi.
class RescaledSystem {
public:
  RescaledSystem(const FracOrder& s, const DoubleWell& F, int order)
      : s_(s), F_(F), kappa_(curvature(F)), basis_(kTwoPi, order, Symmetry::odd),
        diagonal_(basis_.multiplier_diagonal(s)) {}

  const FourierBasis& basis() const { return basis_; }
  int dimension() const { return basis_.dimension(); }

  PeriodicFunction function(const Eigen::VectorXd& c) const { return basis_.function(c); }

  Eigen::VectorXd nonlinearity(const Eigen::VectorXd& c) const {
    const PeriodicFunction u = function(c);
    const int points = std::max(2, F_.degree()) * u.order() + 2;
    std::vector<double> values = u.samples(points);
    for (double& v : values) v = F_.d1(v);
    return basis_.coordinates(PeriodicFunction::from_samples(kTwoPi, u.order(), values)) / kappa_;
  }

  Eigen::VectorXd residual(double lambda, const Eigen::VectorXd& c) const {
    return diagonal_.cwiseProduct(c) + lambda * nonlinearity(c);
  }

  Eigen::MatrixXd jacobian(double lambda, const Eigen::VectorXd& c) const {
    const PeriodicFunction u = function(c);
    const int top = 2 * u.order();
    const int points = std::max(std::max(F_.degree(), 4) * u.order() + 2, 2 * top + 2);
    std::vector<double> values = u.samples(points);
    for (double& v : values) v = lambda * F_.d2(v) / kappa_;
    Eigen::MatrixXd j =
        basis_.multiplication_matrix(PeriodicFunction::from_samples(kTwoPi, top, values));
    j.diagonal() += diagonal_;
    return j;
  }

  BranchPoint point(double lambda, const Eigen::VectorXd& c) const {
    BranchPoint p{lambda, function(c)};
    p.amplitude = p.u.max_abs(8 * p.u.grid_points());
    p.residual = residual(lambda, c).norm();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobian(lambda, c),
                                                             Eigen::EigenvaluesOnly);
    p.sigma_min = eig.eigenvalues().cwiseAbs().minCoeff();
    return p;
  }

private:
  FracOrder s_;
  DoubleWell F_;
  double kappa_;
  FourierBasis basis_;
  Eigen::VectorXd diagonal_;
};

// G_u(lambda, 0) = (-d_xx)^s + lambda F''(0) / kappa.
Eigen::VectorXd linearization_spectrum(const RescaledSystem& sys, double lambda) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(sys.dimension());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.jacobian(lambda, zero),
                                                           Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

int negative_count(const Eigen::VectorXd& ev) { return static_cast<int>((ev.array() < 0.0).count()); }

// Null vector of G_u(lambda, 0), unit length, largest component positive.
Eigen::VectorXd null_vector(const RescaledSystem& sys, double lambda) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(sys.dimension());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.jacobian(lambda, zero));
  Eigen::Index k = 0;
  eig.eigenvalues().cwiseAbs().minCoeff(&k);
  Eigen::VectorXd phi = eig.eigenvectors().col(k);
  Eigen::Index big = 0;
  phi.cwiseAbs().maxCoeff(&big);
  if (phi[big] < 0.0) phi = -phi;
  return phi;
}

}  // namespace

double rescaled_residual(const FracOrder& s, const DoubleWell& F, double lambda,
                         const PeriodicFunction& u) {
  if (std::abs(u.period() - kTwoPi) > 1e-12) {
    throw InvalidArgument("rescaled problem lives on period 2 pi");
  }
  const RescaledSystem sys(s, F, u.order());
  return sys.residual(lambda, sys.basis().coordinates(u)).norm();
}

std::vector<double> detect_bifurcation_points(const FracOrder& s, const DoubleWell& F, int m_max,
                                              int order) {
  if (m_max < 1) throw InvalidArgument("m_max must be >= 1");
  if (order == 0) order = std::max(16, 2 * m_max);
  const RescaledSystem sys(s, F, order);

  std::vector<double> roots;
  const auto refine = [&](double lo, double hi, int index) {
    // The index-th eigenvalue (ascending) changes sign on [lo, hi].
    const auto f = [&](double lambda) { return linearization_spectrum(sys, lambda)[index]; };
    boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iterations);
    return 0.5 * (a + b);
  };

  double lambda = 0.0;
  Eigen::VectorXd ev = linearization_spectrum(sys, lambda);
  int count = negative_count(ev);
  const double ceiling = 2.0 * ev.maxCoeff() + 1.0;
  while (static_cast<int>(roots.size()) < m_max) {
    const double step = 1e-3 * std::max(1.0, lambda);
    const double next = lambda + step;
    if (next > ceiling) throw InvalidArgument("truncation too small for the requested m_max");
    const Eigen::VectorXd ev_next = linearization_spectrum(sys, next);
    const int count_next = negative_count(ev_next);
    if (count_next > count) {
      // Subdivide until every crossing is isolated in its own bracket.
      std::vector<std::pair<double, double>> stack{{lambda, next}};
      std::vector<double> found;
      while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const int c_lo = negative_count(linearization_spectrum(sys, lo));
        const int c_hi = negative_count(linearization_spectrum(sys, hi));
        if (c_hi == c_lo) continue;
        if (c_hi - c_lo == 1 || hi - lo < 1e-14 * std::max(1.0, hi)) {
          const double root = refine(lo, hi, c_lo);
          for (int k = c_lo; k < c_hi; ++k) found.push_back(root);
          continue;
        }
        const double mid = 0.5 * (lo + hi);
        stack.push_back({lo, mid});
        stack.push_back({mid, hi});
      }
      std::sort(found.begin(), found.end());
      for (double r : found) {
        if (static_cast<int>(roots.size()) < m_max) roots.push_back(r);
      }
    }
    lambda = next;
    count = count_next;
  }

  for (double r : roots) {
    const double sigma = linearization_spectrum(sys, r).cwiseAbs().minCoeff();
    if (!(sigma < 1e-6)) throw NoConvergence("bracketed crossing is not a singular point", sigma);
  }
  return roots;
}

BranchPoint solve_at_lambda(const FracOrder& s, const DoubleWell& F, double lambda,
                            const PeriodicFunction& u0, double tol, int max_iterations) {
  if (std::abs(u0.period() - kTwoPi) > 1e-12) {
    throw InvalidArgument("rescaled problem lives on period 2 pi");
  }
  const RescaledSystem sys(s, F, u0.order());
  Eigen::VectorXd c = sys.basis().coordinates(u0);
  Eigen::VectorXd r = sys.residual(lambda, c);
  double norm = r.norm();
  for (int it = 0; norm > tol; ++it) {
    if (it == max_iterations) throw NoConvergence("Newton iteration budget exhausted", norm);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.jacobian(lambda, c));
    if (!(lu.rcond() > 1e-14)) throw SingularJacobian("rescaled Jacobian is singular", lu.rcond());
    const Eigen::VectorXd step = lu.solve(r);
    double t = 1.0;
    Eigen::VectorXd trial;
    double trial_norm = norm;
    for (int k = 0; k < 30; ++k) {
      trial = c - t * step;
      trial_norm = sys.residual(lambda, trial).norm();
      if (trial_norm < (1.0 - 1e-4 * t) * norm || trial_norm <= tol) break;
      t *= 0.5;
    }
    if (!(trial_norm < norm)) {
      if (norm <= 100.0 * tol) break;
      throw NoConvergence("Newton step failed to reduce the residual", norm);
    }
    c = trial;
    norm = trial_norm;
    r = sys.residual(lambda, c);
  }
  return sys.point(lambda, c);
}

namespace {

struct Corrected {
  bool ok = false;
  Eigen::VectorXd z;
};

// Newton on [G(z); t.(z - z_pred)] = 0 with z = (c, lambda).
Corrected correct(const RescaledSystem& sys, const Eigen::VectorXd& z_pred,
                  const Eigen::VectorXd& t, const ContinuationOptions& opt) {
  const int n = sys.dimension();
  Eigen::VectorXd z = z_pred;
  for (int it = 0; it <= opt.max_corrector_iterations; ++it) {
    const Eigen::VectorXd c = z.head(n);
    const double lambda = z[n];
    const Eigen::VectorXd g = sys.residual(lambda, c);
    const double constraint = t.dot(z - z_pred);
    if (!g.allFinite()) return {};
    if (g.norm() <= opt.newton_tol && std::abs(constraint) <= opt.newton_tol) return {true, z};
    if (it == opt.max_corrector_iterations) return {};
    Eigen::MatrixXd m(n + 1, n + 1);
    m.topLeftCorner(n, n) = sys.jacobian(lambda, c);
    m.topRightCorner(n, 1) = sys.nonlinearity(c);
    m.bottomRows(1) = t.transpose();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = g;
    rhs[n] = constraint;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    if (!(lu.rcond() > 1e-14)) return {};
    z -= lu.solve(rhs);
  }
  return {};
}

Eigen::VectorXd tangent(const RescaledSystem& sys, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& previous) {
  const int n = sys.dimension();
  Eigen::MatrixXd m(n + 1, n + 1);
  m.topLeftCorner(n, n) = sys.jacobian(z[n], z.head(n));
  m.topRightCorner(n, 1) = sys.nonlinearity(z.head(n));
  m.bottomRows(1) = previous.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs[n] = 1.0;
  Eigen::VectorXd t = m.partialPivLu().solve(rhs);
  t.normalize();
  if (t.dot(previous) < 0.0) t = -t;
  return t;
}

}  // namespace

Branch continue_branch(const FracOrder& s, const DoubleWell& F, double lambda_start, int steps,
                       double ds_arc, const ContinuationOptions& opt) {
  if (!(ds_arc > 0.0)) throw InvalidArgument("arclength step must be positive");
  if (steps < 1) throw InvalidArgument("need at least one continuation step");
  const RescaledSystem sys(s, F, opt.order);
  const int n = sys.dimension();

  // The detected bifurcation point nearest to lambda_start.
  const int m_guess =
      static_cast<int>(std::ceil(std::pow(std::max(lambda_start, 1.0), 1.0 / (2.0 * s.s())))) + 1;
  const std::vector<double> candidates = detect_bifurcation_points(s, F, m_guess);
  const double lambda_b = *std::min_element(
      candidates.begin(), candidates.end(),
      [&](double a, double b) { return std::abs(a - lambda_start) < std::abs(b - lambda_start); });
  const Eigen::VectorXd phi = null_vector(sys, lambda_b);

  Branch branch;
  branch.bifurcation_lambda = lambda_b;

  const double amplitude_floor = 1e-2 * opt.start_amplitude / std::sqrt(std::numbers::pi);
  const auto accept = [&](const Eigen::VectorXd& z) {
    BranchPoint p = sys.point(z[n], z.head(n));
    if (p.amplitude < amplitude_floor) throw BranchLost("branch collapsed onto u = 0", p.lambda);
    if (p.amplitude >= 1.0) throw BranchLost("branch reached |u| >= 1", p.lambda);
    branch.points.push_back(std::move(p));
  };

  // First step: predictor eps phi at lambda_b + offset, tangent (phi, 0).
  Eigen::VectorXd t(n + 1);
  t << phi, 0.0;
  Eigen::VectorXd z;
  {
    double scale = 1.0;
    int halvings = 0;
    while (true) {
      Eigen::VectorXd pred(n + 1);
      pred << scale * opt.start_amplitude * phi, lambda_b + scale * opt.start_offset;
      const Corrected c = correct(sys, pred, t, opt);
      if (c.ok) {
        z = c.z;
        break;
      }
      if (++halvings > opt.max_halvings) throw StepFailure("could not leave the trivial branch");
      scale *= 0.5;
    }
    accept(z);
    t = tangent(sys, z, t);
  }

  double ds = ds_arc;
  while (static_cast<int>(branch.points.size()) < steps) {
    int halvings = 0;
    Corrected c;
    while (true) {
      c = correct(sys, z + ds * t, t, opt);
      if (c.ok) break;
      if (++halvings > opt.max_halvings) {
        throw StepFailure("corrector failed after " + std::to_string(opt.max_halvings) +
                          " step halvings at lambda = " + std::to_string(z[n]));
      }
      ds *= 0.5;
    }
    z = c.z;
    accept(z);
    t = tangent(sys, z, t);
    ds = std::min(ds_arc, 2.0 * ds);
  }

  bool above = true;
  bool below = true;
  for (const BranchPoint& p : branch.points) {
    above = above && p.lambda > lambda_b;
    below = below && p.lambda < lambda_b;
  }
  branch.direction = above   ? Criticality::supercritical
                     : below ? Criticality::subcritical
                             : Criticality::inconclusive;
  return branch;
}

CriticalityReport classify_criticality(const FracOrder& s, const DoubleWell& F, int m) {
  if (m < 1) throw InvalidArgument("mode index must be >= 1");
  const double kappa = curvature(F);
  const RescaledSystem sys(s, F, std::max(16, 2 * m));
  CriticalityReport out;
  out.lambda = detect_bifurcation_points(s, F, m).back();

  const PeriodicFunction phi = sys.function(null_vector(sys, out.lambda));
  const int points = 4 * phi.order() + 2;
  double sum = 0.0;
  for (double v : phi.samples(points)) sum += v * v * v * v;
  out.phi4_integral = sum * kTwoPi / points;
  out.coefficient = out.lambda * F.d4(0.0) / kappa * out.phi4_integral;

  const double scale = std::max({1.0, std::abs(F.d4(0.0)), kappa});
  if (std::abs(F.d3(0.0)) > 1e-12 * scale || out.coefficient == 0.0) {
    out.criticality = Criticality::inconclusive;
  } else {
    out.criticality = out.coefficient > 0.0 ? Criticality::supercritical : Criticality::subcritical;
  }
  return out;
}

double T0BoundReport::smallest_period() const {
  double best = std::numeric_limits<double>::infinity();
  for (const PeriodSample& p : samples) best = std::min(best, p.period);
  return best;
}

double T0BoundReport::max_residual() const {
  double worst = 0.0;
  for (const PeriodSample& p : samples) {
    worst = std::max({worst, p.residual_rescaled, p.residual_original});
  }
  return worst;
}

T0BoundReport verify_t0_bound(const FracOrder& s, const DoubleWell& F, double lambda_max,
                              double lambda_step, int order) {
  if (!(lambda_step > 0.0)) throw InvalidArgument("lambda step must be positive");
  const double kappa = curvature(F);
  const auto period_of = [&](double lambda) {
    return kTwoPi * std::pow(lambda / kappa, 1.0 / (2.0 * s.s()));
  };
  if (order == 0) order = default_order(period_of(lambda_max));

  const CriticalityReport crit = classify_criticality(s, F, 1);
  if (crit.criticality != Criticality::supercritical) {
    throw InvalidArgument("the first bifurcation is not supercritical");
  }
  const double lambda_b = crit.lambda;
  const RescaledSystem sys(s, F, order);
  const PeriodicFunction phi = sys.function(null_vector(sys, lambda_b));

  T0BoundReport report;
  report.bound = min_period_bound(s, F);
  const int count = static_cast<int>(std::floor((lambda_max - lambda_b) / lambda_step + 1e-9));
  PeriodicFunction previous = phi;
  PeriodicFunction guess = phi;
  for (int k = 1; k <= count; ++k) {
    const double lambda = lambda_b + k * lambda_step;
    if (k == 1) {
      // Local pitchfork amplitude: lambda - lambda_b = (coefficient / 6) A^2.
      const double a2 = 6.0 * (lambda - lambda_b) / crit.coefficient * lambda_b / lambda;
      guess = std::sqrt(a2) * phi;
    }
    const BranchPoint p = solve_at_lambda(s, F, lambda, guess);
    if (p.amplitude < 1e-8) throw BranchLost("march fell onto the trivial branch", lambda);

    PeriodSample sample{lambda, period_of(lambda), p.amplitude, p.residual, 0.0,
                        p.u.with_period(period_of(lambda))};
    sample.residual_original = semilinear_residual_norm(sample.u, s, F);
    report.samples.push_back(std::move(sample));

    guess = k == 1 ? p.u : p.u + (p.u - previous);
    previous = p.u;
  }
  return report;
}

}  // namespace fracperiodic
