#include "fracperiodic/extension.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/numerics/special.hpp"

namespace fracperiodic {

// ---------------------------------------------------------------------------
// BesselProfile

BesselProfile::BesselProfile(const FracOrder& s, double frequency)
    : s_(s), omega_(frequency), scale_(std::exp2(1.0 - s.s()) / std::tgamma(s.s())) {
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw InvalidArgument("Bessel profile needs a positive frequency");
  }
}

BesselProfile BesselProfile::for_mode(const FracOrder& s, int m, double period) {
  return BesselProfile(s, 2.0 * std::numbers::pi * m / period);
}

double BesselProfile::normalization() const {
  const double s = s_.s();
  return std::exp2(1.0 - s) * std::tgamma(1.0 - s) * std::sin(s * std::numbers::pi) *
         std::pow(omega_, s) / std::numbers::pi;
}

namespace {
double checked_argument(double omega, double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw BesselEvalFailure("height must be finite and >= 0");
  return omega * y;
}
}  // namespace

double BesselProfile::value(double y) const {
  const double z = checked_argument(omega_, y);
  if (z == 0.0) return 1.0;
  return scale_ * numerics::scaled_bessel_k(s_.s(), z);
}

double BesselProfile::derivative(double y) const {
  const double z = checked_argument(omega_, y);
  // z^s K_{1-s}(z) = z^{2s-1} * z^{1-s} K_{1-s}(z)
  return -scale_ * omega_ * std::pow(z, 2.0 * s_.s() - 1.0) *
         numerics::scaled_bessel_k(1.0 - s_.s(), z);
}

double BesselProfile::weighted_derivative(double y) const {
  const double z = checked_argument(omega_, y);
  return -scale_ * std::pow(omega_, 2.0 * s_.s()) * numerics::scaled_bessel_k(1.0 - s_.s(), z);
}

double BesselProfile::weighted_derivative_limit() const {
  // z^{1-s} K_{1-s}(z) -> 2^{-s} Gamma(1-s)
  const double s = s_.s();
  return -scale_ * std::pow(omega_, 2.0 * s) * std::exp2(-s) * std::tgamma(1.0 - s);
}

// ---------------------------------------------------------------------------
// Backends

namespace {

double lowest_frequency(const PeriodicFunction& u) {
  for (int m = 1; m <= u.order(); ++m) {
    if (u.cos_coeff(m) != 0.0 || u.sin_coeff(m) != 0.0) return u.angular_frequency(m);
  }
  return 0.0;
}

double highest_frequency(const PeriodicFunction& u) {
  for (int m = u.order(); m >= 1; --m) {
    if (u.cos_coeff(m) != 0.0 || u.sin_coeff(m) != 0.0) return u.angular_frequency(m);
  }
  return 0.0;
}

PeriodicFunction x_derivative(const PeriodicFunction& u) {
  std::vector<double> c(u.order() + 1, 0.0);
  std::vector<double> sn(u.order() + 1, 0.0);
  for (int m = 1; m <= u.order(); ++m) {
    const double w = u.angular_frequency(m);
    c[m] = w * u.sin_coeff(m);
    sn[m] = -w * u.cos_coeff(m);
  }
  return {u.period(), std::move(c), std::move(sn)};
}

}  // namespace

class ExtensionField::Backend {
public:
  Backend(PeriodicFunction u, const FracOrder& s, ExtensionMethod method,
          const ExtensionOptions& options)
      : u_(std::move(u)), s_(s), method_(method), options_(options) {
    if (options.y_nodes < 8) throw InvalidArgument("y-rule needs at least 8 nodes");
    if (!(options.decay_lengths > 0.0)) throw InvalidArgument("decay_lengths must be positive");
    omega_low_ = lowest_frequency(u_);
    omega_high_ = highest_frequency(u_);
    if (omega_low_ == 0.0) {
      omega_low_ = omega_high_ = u_.angular_frequency(1);
    }
    y_max_ = options.decay_lengths / omega_low_;
    rule_ = make_rule(s_.a(), y_max_);
  }
  virtual ~Backend() = default;

  virtual double value(double x, double y) const = 0;
  virtual double dx(double x, double y) const = 0;
  virtual double weighted_dy(double x, double y) const = 0;

  numerics::QuadratureRule make_rule(double alpha, double upper) const {
    numerics::GradedRuleSpec spec;
    spec.alpha = alpha;
    spec.y_max = upper;
    spec.y_min = std::min(1e-3 / omega_high_, 0.5 * upper);
    spec.ratio = 0.25;
    spec.max_width = 2.5 / omega_low_;
    spec.nodes_per_panel = 1;
    const int panels = static_cast<int>(numerics::graded_weighted_rule(spec).size());
    spec.nodes_per_panel =
        std::max(4, static_cast<int>(std::lround(static_cast<double>(options_.y_nodes) / panels)));
    return numerics::graded_weighted_rule(spec);
  }

  PeriodicFunction u_;
  FracOrder s_;
  ExtensionMethod method_;
  ExtensionOptions options_;
  double omega_low_ = 0.0;
  double omega_high_ = 0.0;
  double y_max_ = 0.0;
  numerics::QuadratureRule rule_;
};

namespace {

class BesselBackend final : public ExtensionField::Backend {
public:
  BesselBackend(const PeriodicFunction& u, const FracOrder& s, const ExtensionOptions& options)
      : Backend(u, s, ExtensionMethod::bessel_series, options) {
    for (int m = 1; m <= u_.order(); ++m) profiles_.push_back(BesselProfile::for_mode(s_, m, u_.period()));
  }

  double value(double x, double y) const override {
    double sum = u_.cos_coeff(0);
    for (int m = 1; m <= u_.order(); ++m) {
      const double w = u_.angular_frequency(m);
      const double c = mode_combination(m, w * x, false);
      if (c != 0.0) sum += profiles_[m - 1].value(y) * c;
    }
    return sum;
  }

  double dx(double x, double y) const override {
    double sum = 0.0;
    for (int m = 1; m <= u_.order(); ++m) {
      const double w = u_.angular_frequency(m);
      const double c = mode_combination(m, w * x, true);
      if (c != 0.0) sum += w * profiles_[m - 1].value(y) * c;
    }
    return sum;
  }

  double weighted_dy(double x, double y) const override {
    double sum = 0.0;
    for (int m = 1; m <= u_.order(); ++m) {
      const double w = u_.angular_frequency(m);
      const double c = mode_combination(m, w * x, false);
      if (c == 0.0) continue;
      const BesselProfile& p = profiles_[m - 1];
      sum += (y == 0.0 ? p.weighted_derivative_limit() : p.weighted_derivative(y)) * c;
    }
    return sum;
  }

  const BesselProfile& profile(int m) const { return profiles_.at(m - 1); }

private:
  // a_m sin + b_m cos, or its phase derivative a_m cos - b_m sin.
  double mode_combination(int m, double phase, bool derivative) const {
    const double a = u_.sin_coeff(m);
    const double b = u_.cos_coeff(m);
    if (a == 0.0 && b == 0.0) return 0.0;
    return derivative ? a * std::cos(phase) - b * std::sin(phase)
                      : a * std::sin(phase) + b * std::cos(phase);
  }

  std::vector<BesselProfile> profiles_;
};

// Kernel images folded onto [0, T):  sum_{j >= 0} k(z + jT)  for the
// Poisson kernel and for y^a d/dy of it. Images with z + jT >= 2y are summed
// through the binomial expansion in (y / (z + jT))^2, one Hurwitz zeta per term.
struct PoissonFold {
  std::vector<double> nodes;
  std::vector<double> value_weights;  // multiply D(z) = u(x+z) + u(x-z) - 2u(x)
  std::vector<double> dtn_weights;
};

struct FoldedKernel {
  double value;
  double dtn;
};

FoldedKernel folded_kernel(double s, double period, double y, double z) {
  const double beta = 0.5 + s;
  const double gamma = beta + 1.0;
  const double y2 = y * y;
  const int first_tail = std::max(1, static_cast<int>(std::ceil(2.0 * y / period)));

  double value = 0.0;
  double dtn = 0.0;
  for (int j = 0; j < first_tail; ++j) {
    const double t = z + j * period;
    const double r2 = t * t + y2;
    value += std::pow(r2, -beta);
    dtn += std::pow(r2, -gamma) * (2.0 * s * t * t - y2);
  }

  const double q = first_tail + z / period;
  double b_value = 1.0;  // binom(-beta, k)
  double b_dtn = 1.0;    // binom(-gamma, k)
  double y_pow = 1.0;    // y^{2k}
  for (int k = 0; k < 80; ++k) {
    const double e_value = 2.0 * beta + 2.0 * k;
    const double term_value =
        b_value * y_pow * std::pow(period, -e_value) * numerics::hurwitz_zeta(e_value, q);
    const double e_dtn = 2.0 * gamma + 2.0 * k;
    const double term_dtn =
        b_dtn * y_pow *
        (2.0 * s * std::pow(period, 2.0 - e_dtn) * numerics::hurwitz_zeta(e_dtn - 2.0, q) -
         y2 * std::pow(period, -e_dtn) * numerics::hurwitz_zeta(e_dtn, q));
    value += term_value;
    dtn += term_dtn;
    if (k > 0 && std::abs(term_value) <= 1e-17 * std::abs(value) &&
        std::abs(term_dtn) <= 1e-17 * std::abs(dtn)) {
      break;
    }
    b_value *= (-beta - k) / (k + 1.0);
    b_dtn *= (-gamma - k) / (k + 1.0);
    y_pow *= y2;
  }
  return {value, dtn};
}

PoissonFold build_fold(const FracOrder& s, double period, double omega_high, double y, int level) {
  constexpr int kNodes = 20;
  const double wave = omega_high > 0.0 ? std::numbers::pi / omega_high : period;
  const double max_width = std::ldexp(std::min(period, wave), -level);
  const double first = std::min(0.25 * y, max_width);
  const std::vector<double> edges = numerics::graded_panel_edges(period, first, max_width);
  const double c_value = s.poisson_constant() * std::pow(y, 2.0 * s.s());
  const double c_dtn = s.poisson_constant();

  PoissonFold fold;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const numerics::QuadratureRule panel = numerics::gauss_legendre(kNodes, edges[k], edges[k + 1]);
    for (std::size_t i = 0; i < panel.size(); ++i) {
      const FoldedKernel kernel = folded_kernel(s.s(), period, y, panel.nodes[i]);
      fold.nodes.push_back(panel.nodes[i]);
      fold.value_weights.push_back(panel.weights[i] * c_value * kernel.value);
      fold.dtn_weights.push_back(panel.weights[i] * c_dtn * kernel.dtn);
    }
  }
  return fold;
}

// Largest relative change between two folds over the test functions
// cos(w_m z) - 1, m = 1..N, which span every second difference of the base.
double fold_change(const PoissonFold& coarse, const PoissonFold& fine, double period, int order) {
  double worst = 0.0;
  for (int m = 1; m <= order; ++m) {
    const double w = 2.0 * std::numbers::pi * m / period;
    const auto apply = [&](const PoissonFold& f, const std::vector<double>& weights) {
      double sum = 0.0;
      for (std::size_t i = 0; i < f.nodes.size(); ++i) sum += weights[i] * (std::cos(w * f.nodes[i]) - 1.0);
      return sum;
    };
    const double v0 = apply(coarse, coarse.value_weights);
    const double v1 = apply(fine, fine.value_weights);
    const double d0 = apply(coarse, coarse.dtn_weights);
    const double d1 = apply(fine, fine.dtn_weights);
    worst = std::max(worst, std::abs(v1 - v0) / std::max(1.0, std::abs(v1)));
    worst = std::max(worst, std::abs(d1 - d0) / std::max(1.0, std::abs(d1)));
  }
  return worst;
}

class PoissonBackend final : public ExtensionField::Backend {
public:
  PoissonBackend(const PeriodicFunction& u, const FracOrder& s, const ExtensionOptions& options)
      : Backend(u, s, ExtensionMethod::poisson_convolution, options), u_prime_(x_derivative(u)) {}

  double value(double x, double y) const override { return convolve(u_, x, y); }
  double dx(double x, double y) const override { return convolve(u_prime_, x, y); }

  double weighted_dy(double x, double y) const override {
    if (y == 0.0) {
      throw InvalidArgument("boundary flux of the convolution route needs dirichlet_to_neumann");
    }
    const PoissonFold& f = fold(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      sum -= f.dtn_weights[i] * u_.second_difference(x, f.nodes[i]);
    }
    return sum;
  }

private:
  double convolve(const PeriodicFunction& g, double x, double y) const {
    if (!(y >= 0.0)) throw InvalidArgument("height must be >= 0");
    if (y == 0.0 || g.is_constant()) return g(x);
    const PoissonFold& f = fold(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      sum -= f.value_weights[i] * g.second_difference(x, f.nodes[i]);
    }
    return g(x) + sum;
  }

  const PoissonFold& fold(double y) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      const auto it = cache_.find(y);
      if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_shared<PoissonFold>(converged_fold(y));
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_.size() > 4096) cache_.clear();
    return *cache_.emplace(y, std::move(built)).first->second;
  }

  PoissonFold converged_fold(double y) const {
    PoissonFold coarse = build_fold(s_, u_.period(), omega_high_, y, 0);
    double change = 0.0;
    for (int level = 1; level <= 5; ++level) {
      PoissonFold fine = build_fold(s_, u_.period(), omega_high_, y, level);
      change = fold_change(coarse, fine, u_.period(), u_.order());
      if (change <= options_.quad_tol) return fine;
      coarse = std::move(fine);
    }
    throw QuadratureNonConvergence("Poisson convolution quadrature stalled", change);
  }

  PeriodicFunction u_prime_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::shared_ptr<PoissonFold>> cache_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ExtensionField

ExtensionField::ExtensionField(std::shared_ptr<const Backend> backend)
    : backend_(std::move(backend)) {}

const PeriodicFunction& ExtensionField::base() const noexcept { return backend_->u_; }
const FracOrder& ExtensionField::order() const noexcept { return backend_->s_; }
ExtensionMethod ExtensionField::method() const noexcept { return backend_->method_; }
const ExtensionOptions& ExtensionField::options() const noexcept { return backend_->options_; }
double ExtensionField::value(double x, double y) const { return backend_->value(x, y); }
double ExtensionField::dx(double x, double y) const { return backend_->dx(x, y); }
double ExtensionField::weighted_dy(double x, double y) const { return backend_->weighted_dy(x, y); }

double ExtensionField::dy(double x, double y) const {
  if (!(y > 0.0)) throw InvalidArgument("U_y is evaluated for y > 0 only");
  return weighted_dy(x, y) * std::pow(y, -order().a());
}

double ExtensionField::y_max() const noexcept { return backend_->y_max_; }

numerics::QuadratureRule ExtensionField::y_rule(double alpha, double upper) const {
  return backend_->make_rule(alpha, upper > 0.0 ? upper : backend_->y_max_);
}

const numerics::QuadratureRule& ExtensionField::y_rule() const noexcept { return backend_->rule_; }

ExtensionField extend_bessel(const PeriodicFunction& u, const FracOrder& s,
                             const ExtensionOptions& options) {
  return ExtensionField(std::make_shared<BesselBackend>(u, s, options));
}

ExtensionField extend_poisson(const PeriodicFunction& u, const FracOrder& s,
                              const ExtensionOptions& options) {
  return ExtensionField(std::make_shared<PoissonBackend>(u, s, options));
}

double poisson_kernel(const FracOrder& s, double x, double y) {
  if (!(y > 0.0)) throw InvalidArgument("Poisson kernel needs y > 0");
  return s.poisson_constant() * std::pow(y, 2.0 * s.s()) *
         std::pow(x * x + y * y, -0.5 - s.s());
}

double poisson_kernel_mass(const FracOrder& s, double y) {
  if (!(y > 0.0)) throw InvalidArgument("Poisson kernel needs y > 0");
  // x = y tan(t) maps (0, inf) onto (0, pi/2); near pi/2 the cosine is taken
  // from the complement supplied by the integrator to keep full precision.
  const double half = 0.5 * std::numbers::pi;
  const auto integrand = [&](double t, double tc) {
    const double c = tc > 0.0 ? std::sin(tc) : std::cos(t);
    if (c < 1e-100) return 0.0;  // remaining mass below c^{2s}
    const double x = y * std::sin(t) / c;
    return poisson_kernel(s, x, y) * y / (c * c);
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0;
  const double value = integrator.integrate(integrand, 0.0, half, 1e-15, &error);
  if (!std::isfinite(value) || error > 1e-12) {
    throw QuadratureNonConvergence("kernel mass quadrature did not converge", error);
  }
  return 2.0 * value;
}

// ---------------------------------------------------------------------------
// Dirichlet-to-Neumann map

namespace {

// Least-squares fit of g(y) = L + c1 y^{2-2s} + c2 y^2 + c3 y^{4-2s} + c4 y^4
// with scaled columns; returns L.
double extrapolate_to_zero(const std::vector<double>& ys, const std::vector<double>& gs, double s) {
  const double exponents[] = {0.0, 2.0 - 2.0 * s, 2.0, 4.0 - 2.0 * s, 4.0};
  const int rows = static_cast<int>(ys.size());
  Eigen::MatrixXd a(rows, 5);
  Eigen::VectorXd b(rows);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < 5; ++k) a(i, k) = std::pow(ys[i], exponents[k]);
    b(i) = gs[i];
  }
  const Eigen::VectorXd scale = a.colwise().norm().cwiseInverse().transpose();
  const Eigen::MatrixXd scaled = a * scale.asDiagonal();
  const Eigen::VectorXd c = scaled.colPivHouseholderQr().solve(b);
  return c(0) * scale(0);
}

}  // namespace

PeriodicFunction dirichlet_to_neumann(const ExtensionField& field, double tol) {
  const PeriodicFunction& u = field.base();
  const FracOrder& s = field.order();
  if (field.method() == ExtensionMethod::bessel_series) {
    return u.map_modes([&](int m) {
      if (m == 0) return 0.0;
      return -s.d_s() * BesselProfile::for_mode(s, m, u.period()).weighted_derivative_limit();
    });
  }

  std::vector<double> ys;
  for (int k = 0; k <= 8; ++k) ys.push_back(1e-3 * std::pow(10.0, -0.5 * k));
  const int points = u.grid_points();
  const std::vector<double> xs = PeriodicFunction::nodes(u.period(), points);
  std::vector<double> values(points);
  double spread = 0.0;
  double magnitude = 1.0;
  for (int j = 0; j < points; ++j) {
    std::vector<double> gs;
    for (double y : ys) gs.push_back(field.weighted_dy(xs[j], y));
    const double all = extrapolate_to_zero(ys, gs, s.s());
    const double tail = extrapolate_to_zero({ys.begin() + 1, ys.end()}, {gs.begin() + 1, gs.end()},
                                            s.s());
    spread = std::max(spread, std::abs(all - tail));
    magnitude = std::max(magnitude, std::abs(all));
    values[j] = -s.d_s() * all;
  }
  if (spread > tol * magnitude) {
    throw ExtrapolationDivergence("Neumann limit extrapolants disagree", spread);
  }
  return PeriodicFunction::from_samples(u.period(), u.order(), values, u.odd());
}

// ---------------------------------------------------------------------------
// Weighted Dirichlet energy

double extension_energy(const ExtensionField& field, double y_max) {
  const PeriodicFunction& u = field.base();
  const FracOrder& s = field.order();
  if (u.is_constant()) return 0.0;
  const double upper = y_max > 0.0 ? y_max : field.y_max();
  const numerics::QuadratureRule rule_x = field.y_rule(s.a(), upper);    // for U_x^2
  const numerics::QuadratureRule rule_y = field.y_rule(-s.a(), upper);   // for (y^a U_y)^2
  const double omega_low = lowest_frequency(u);

  double energy = 0.0;
  double tail = 0.0;
  if (field.method() == ExtensionMethod::bessel_series) {
    for (int m = 1; m <= u.order(); ++m) {
      const double power = u.cos_coeff(m) * u.cos_coeff(m) + u.sin_coeff(m) * u.sin_coeff(m);
      if (power == 0.0) continue;
      const BesselProfile p = BesselProfile::for_mode(s, m, u.period());
      const double w = p.frequency();
      const double gradient_x =
          rule_x.integrate([&](double y) { return w * w * p.value(y) * p.value(y); });
      const double gradient_y = rule_y.integrate([&](double y) {
        const double q = p.weighted_derivative(y);
        return q * q;
      });
      energy += 0.5 * u.period() * power * (gradient_x + gradient_y);
      const double edge = std::pow(upper, s.a()) * w * w * p.value(upper) * p.value(upper) +
                          std::pow(upper, -s.a()) * std::pow(p.weighted_derivative(upper), 2);
      tail += 0.5 * u.period() * power * edge / (2.0 * w);
    }
  } else {
    const int points = u.grid_points();
    const std::vector<double> xs = PeriodicFunction::nodes(u.period(), points);
    const double dx = u.period() / points;
    for (double x : xs) {
      energy += dx * rule_x.integrate([&](double y) {
        const double g = field.dx(x, y);
        return g * g;
      });
      energy += dx * rule_y.integrate([&](double y) {
        const double g = field.weighted_dy(x, y);
        return g * g;
      });
      const double gx = field.dx(x, upper);
      const double gy = field.weighted_dy(x, upper);
      tail += dx * (std::pow(upper, s.a()) * gx * gx + std::pow(upper, -s.a()) * gy * gy) /
              (2.0 * omega_low);
    }
  }
  if (tail > 1e-10) {
    throw TailNotConverged("extension energy remainder beyond y_max too large", tail);
  }
  return energy;
}

}  // namespace fracperiodic
