#include "fracperiodic/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "fracperiodic/errors.hpp"
#include "fracperiodic/extension.hpp"
#include "fracperiodic/numerics/parallel.hpp"
#include "fracperiodic/numerics/quadrature.hpp"
#include "fracperiodic/numerics/special.hpp"
#include "fracperiodic/spectral.hpp"

namespace fracperiodic {

namespace {

// Nonzero modes of u with their extension profiles.
struct ActiveModes {
  std::vector<double> omega;
  std::vector<double> a;  // sine coefficients
  std::vector<double> b;  // cosine coefficients
  std::vector<BesselProfile> profiles;

  ActiveModes(const PeriodicFunction& u, const FracOrder& s) {
    double largest = 0.0;
    for (int m = 1; m <= u.order(); ++m) {
      largest = std::max({largest, std::abs(u.sin_coeff(m)), std::abs(u.cos_coeff(m))});
    }
    for (int m = 1; m <= u.order(); ++m) {
      if (std::max(std::abs(u.sin_coeff(m)), std::abs(u.cos_coeff(m))) <= 1e-15 * largest) continue;
      omega.push_back(u.angular_frequency(m));
      a.push_back(u.sin_coeff(m));
      b.push_back(u.cos_coeff(m));
      profiles.push_back(BesselProfile::for_mode(s, m, u.period()));
    }
  }
  std::size_t size() const { return omega.size(); }

  // Per-mode factors at x: U_x = sum J w (a cos - b sin), y^a U_y = sum (y^a J') (a sin + b cos).
  void phases(double x, std::vector<double>& dx_factor, std::vector<double>& dy_factor) const {
    dx_factor.resize(size());
    dy_factor.resize(size());
    for (std::size_t k = 0; k < size(); ++k) {
      const double c = std::cos(omega[k] * x);
      const double sn = std::sin(omega[k] * x);
      dx_factor[k] = omega[k] * (a[k] * c - b[k] * sn);
      dy_factor[k] = a[k] * sn + b[k] * c;
    }
  }

  double ux(const std::vector<double>& dx_factor, double y) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < size(); ++k) sum += profiles[k].value(y) * dx_factor[k];
    return sum;
  }
  double weighted_uy(const std::vector<double>& dy_factor, double y) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
      sum += profiles[k].weighted_derivative(y) * dy_factor[k];
    }
    return sum;
  }
};

// Profile values at the nodes of the two y-rules of one interval [0, Y]:
// weight y^a for U_x^2 and y^{-a} for (y^a U_y)^2.
class IntervalTables {
public:
  IntervalTables(const ActiveModes& modes, numerics::QuadratureRule rule_x,
                 numerics::QuadratureRule rule_y)
      : modes_(&modes), rule_x_(std::move(rule_x)), rule_y_(std::move(rule_y)) {
    const std::size_t m = modes.size();
    values_.resize(rule_x_.size() * m);
    derivs_.resize(rule_y_.size() * m);
    for (std::size_t i = 0; i < rule_x_.size(); ++i) {
      for (std::size_t k = 0; k < m; ++k) values_[i * m + k] = modes.profiles[k].value(rule_x_.nodes[i]);
    }
    for (std::size_t i = 0; i < rule_y_.size(); ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        derivs_[i * m + k] = modes.profiles[k].weighted_derivative(rule_y_.nodes[i]);
      }
    }
  }

  // int_0^Y U_x^2 y^a dy and int_0^Y U_y^2 y^a dy at x.
  std::pair<double, double> integrals(double x) const {
    std::vector<double> fx;
    std::vector<double> fy;
    modes_->phases(x, fx, fy);
    const std::size_t m = modes_->size();
    double ix = 0.0;
    for (std::size_t i = 0; i < rule_x_.size(); ++i) {
      double ux = 0.0;
      for (std::size_t k = 0; k < m; ++k) ux += values_[i * m + k] * fx[k];
      ix += rule_x_.weights[i] * ux * ux;
    }
    double iy = 0.0;
    for (std::size_t i = 0; i < rule_y_.size(); ++i) {
      double uy = 0.0;
      for (std::size_t k = 0; k < m; ++k) uy += derivs_[i * m + k] * fy[k];
      iy += rule_y_.weights[i] * uy * uy;
    }
    return {ix, iy};
  }

private:
  const ActiveModes* modes_;
  numerics::QuadratureRule rule_x_;
  numerics::QuadratureRule rule_y_;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

void require_samples(int n) {
  if (n < 2) throw InvalidArgument("need at least two samples");
}

}  // namespace

HamiltonianReport hamiltonian_samples(const PeriodicFunction& u, const FracOrder& s,
                                      const DoubleWell& F, int n_samples) {
  require_samples(n_samples);
  HamiltonianReport r;
  r.x = PeriodicFunction::nodes(u.period(), n_samples);
  r.w.assign(n_samples, 0.0);
  if (!u.is_constant()) {
    const ExtensionField field = extend_bessel(u, s);
    const ActiveModes modes(u, s);
    const IntervalTables tables(modes, field.y_rule(s.a()), field.y_rule(-s.a()));
    for (int i = 0; i < n_samples; ++i) {
      const auto [ix, iy] = tables.integrals(r.x[i]);
      r.w[i] = 0.5 * (ix - iy);
    }
  }
  r.potential.resize(n_samples);
  r.values.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    r.potential[i] = F(u(r.x[i]));
    r.values[i] = s.d_s() * r.w[i] - r.potential[i];
  }
  r.constant = std::accumulate(r.values.begin(), r.values.end(), 0.0) / n_samples;
  double sq = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double dev = std::abs(r.values[i] - r.constant);
    sq += dev * dev;
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst = i;
    }
  }
  r.stddev = std::sqrt(sq / n_samples);
  return r;
}

HamiltonianReport hamiltonian_check(const PeriodicFunction& u, const FracOrder& s,
                                    const DoubleWell& F, int n_samples, double tol) {
  HamiltonianReport r = hamiltonian_samples(u, s, F, n_samples);
  if (r.max_deviation > tol) {
    throw IdentityViolation("d_s w - F(u) is not constant", r.x[r.worst], r.max_deviation);
  }
  return r;
}

ModicaReport modica_check(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F,
                          const ModicaOptions& opt) {
  require_samples(opt.nx);
  require_samples(opt.ny);
  for (int m = 1; m <= u.order(); ++m) {
    if (u.sin_coeff(m) != 0.0) throw InvalidArgument("Modica check needs an even solution");
  }
  if (u.is_constant()) throw InvalidArgument("Modica check needs a nonconstant solution");

  ModicaReport r;
  const double T = u.period();
  const double ds = s.d_s();
  const double a = s.a();
  r.c_t = hamiltonian_samples(u, s, F, opt.hamiltonian_samples).constant;

  r.c_hat = -std::numeric_limits<double>::infinity();
  for (double v : u.samples(8 * u.grid_points())) r.c_hat = std::max(r.c_hat, -F(v) - r.c_t);

  const ExtensionField field = extend_bessel(u, s);
  const ActiveModes modes(u, s);
  const double y_max = field.y_max();
  r.x.resize(opt.nx);
  r.y.resize(opt.ny);
  for (int i = 0; i < opt.nx; ++i) r.x[i] = 0.5 * T * i / (opt.nx - 1);
  for (int j = 0; j < opt.ny; ++j) {
    const double t = static_cast<double>(j) / (opt.ny - 1);
    r.y[j] = y_max * t * t;
  }

  std::vector<double> potential(opt.nx);
  for (int i = 0; i < opt.nx; ++i) potential[i] = F(u(r.x[i]));
  const auto v_at = [&](const IntervalTables& tables, double x, double fu) {
    const auto [ix, iy] = tables.integrals(x);
    return 0.5 * ds * (ix - iy) - fu - r.c_t;
  };

  r.values.assign(static_cast<std::size_t>(opt.nx) * opt.ny, 0.0);
  std::vector<IntervalTables> tables;
  tables.reserve(opt.ny);
  for (int j = 0; j < opt.ny; ++j) {
    if (j == 0) {
      tables.emplace_back(modes, numerics::QuadratureRule{}, numerics::QuadratureRule{});
      for (int i = 0; i < opt.nx; ++i) r.values[i] = -potential[i] - r.c_t;
      continue;
    }
    tables.emplace_back(modes, field.y_rule(a, r.y[j]), field.y_rule(-a, r.y[j]));
    for (int i = 0; i < opt.nx; ++i) {
      r.values[static_cast<std::size_t>(j) * opt.nx + i] = v_at(tables.back(), r.x[i], potential[i]);
    }
  }

  r.max_value = -std::numeric_limits<double>::infinity();
  r.max_off_axis = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < opt.ny; ++j) {
    for (int i = 0; i < opt.nx; ++i) {
      const double v = r.values[static_cast<std::size_t>(j) * opt.nx + i];
      if (v > r.max_value) {
        r.max_value = v;
        r.argmax_x = i;
        r.argmax_y = j;
      }
      if (j > 0) r.max_off_axis = std::max(r.max_off_axis, v);
    }
  }
  for (int i = 0; i < opt.nx; ++i) {
    r.tail_max = std::max(r.tail_max, std::abs(r.values[static_cast<std::size_t>(opt.ny - 1) * opt.nx + i]));
  }
  {
    const IntervalTables full(modes, field.y_rule(a), field.y_rule(-a));
    r.lower_bound = 0.5 * ds * full.integrals(0.5 * T).second;
  }

  // div(y^{-a} grad v) = d_s a U_y^2 / y by centered differences.
  const double h = opt.stencil;
  const numerics::QuadratureRule strip = numerics::gauss_legendre(8, 0.0, 1.0);
  std::vector<double> fx;
  std::vector<double> fy;
  const auto strip_integral = [&](double x, double y0, double y1) {
    modes.phases(x, fx, fy);
    double sum = 0.0;
    for (std::size_t q = 0; q < strip.size(); ++q) {
      const double y = y0 + (y1 - y0) * strip.nodes[q];
      const double ux = modes.ux(fx, y);
      const double uy = modes.weighted_uy(fy, y) * std::pow(y, -a);
      sum += strip.weights[q] * (ux * ux - uy * uy) * std::pow(y, a);
    }
    return 0.5 * ds * (y1 - y0) * sum;
  };
  const int stride = std::max(1, opt.pde_stride);
  for (int j = stride; j < opt.ny - 1; j += stride) {
    const double y = r.y[j];
    if (y <= 2.0 * h) continue;
    for (int i = stride; i < opt.nx - 1; i += stride) {
      const double x = r.x[i];
      const double vc = v_at(tables[j], x, potential[i]);
      const double vp = v_at(tables[j], x + h, F(u(x + h)));
      const double vm = v_at(tables[j], x - h, F(u(x - h)));
      const double term_x = std::pow(y, -a) * (vp - 2.0 * vc + vm) / (h * h);
      const double up = strip_integral(x, y, y + h);
      const double down = strip_integral(x, y - h, y);
      const double term_y =
          (std::pow(y + 0.5 * h, -a) * up - std::pow(y - 0.5 * h, -a) * down) / (h * h);
      modes.phases(x, fx, fy);
      const double uy = modes.weighted_uy(fy, y) * std::pow(y, -a);
      const double rhs = ds * a * uy * uy / y;
      r.pde_residual = std::max(r.pde_residual, std::abs(term_x + term_y - rhs));
    }
  }

  if (!(r.c_hat > 0.0)) throw InequalityViolation("c_hat is not positive", 0.0, 0.0, r.c_hat);
  for (int j = 0; j < opt.ny; ++j) {
    for (int i = 0; i < opt.nx; ++i) {
      const double excess = r.values[static_cast<std::size_t>(j) * opt.nx + i] - r.c_hat;
      if (excess > opt.tol) {
        throw InequalityViolation("v exceeds c_hat", r.x[i], r.y[j], excess);
      }
    }
  }
  if (r.argmax_y != 0) {
    throw InequalityViolation("grid maximum is not on y = 0", r.x[r.argmax_x], r.y[r.argmax_y],
                              r.max_value - r.c_hat);
  }
  return r;
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::sub_half: return "sub-half";
    case Regime::half: return "half";
    case Regime::super_half: return "super-half";
  }
  return "sub-half";
}

namespace {

Regime regime_of(const FracOrder& s) {
  if (std::abs(s.s() - 0.5) < 1e-12) return Regime::half;
  return s.s() < 0.5 ? Regime::sub_half : Regime::super_half;
}

}  // namespace

double regime_scale(const FracOrder& s, double period) {
  switch (regime_of(s)) {
    case Regime::sub_half: return std::pow(period, 1.0 - 2.0 * s.s());
    case Regime::half: return std::log(period);
    case Regime::super_half: return 1.0;
  }
  return 1.0;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InvalidArgument("slope fit needs two or more points");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

EnergyScanReport energy_scan(const FracOrder& s, const DoubleWell& F,
                             const std::vector<double>& periods, const SolveConfig& config,
                             int jobs) {
  if (periods.empty()) throw InvalidArgument("empty period list");
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (!(periods[i] > 0.0) || (i > 0 && !(periods[i] > periods[i - 1]))) {
      throw InvalidArgument("periods must be positive and increasing");
    }
  }
  SolveConfig cfg = config;
  cfg.symmetry = Symmetry::odd;
  cfg.jobs = 1;
  cfg.validate();

  const int n = static_cast<int>(periods.size());
  std::vector<std::optional<SemilinearSolution>> sols(n);
  numerics::parallel_for(n, jobs, [&](int i) {
    SolveConfig c = cfg;
    if (config.order == 0) c.order = default_order(periods[i]);
    sols[i] = minimize_energy(periods[i], s, F, c);
  });

  EnergyScanReport r;
  r.regime = regime_of(s);
  const double f0 = F(0.0);
  std::vector<double> xs;
  std::vector<double> ys;
  r.energies_nonnegative = true;
  r.sigma_decreasing = true;
  for (int i = 0; i < n; ++i) {
    const SemilinearSolution& sol = *sols[i];
    const double T = periods[i];
    const double J = sol.energy;
    xs.push_back(std::log(T));
    ys.push_back(r.regime == Regime::half ? J : std::log(J));
    const double slope = i == 0 ? std::numeric_limits<double>::quiet_NaN() : fit_slope(xs, ys);
    const double sigma = J / (f0 * T);
    if (!r.rows.empty() && !(sigma < r.rows.back().sigma)) r.sigma_decreasing = false;
    r.energies_nonnegative = r.energies_nonnegative && J >= 0.0;
    r.sigma_max = std::max(r.sigma_max, sigma);
    r.max_j_over_log = std::max(r.max_j_over_log, J / std::log(T));
    r.rows.push_back({T, J, sol.variational_energy, sol.amplitude, sigma, slope, sol.residual, sol.u});
  }
  r.slope = n > 1 ? r.rows.back().slope_so_far : std::numeric_limits<double>::quiet_NaN();
  r.ratio = r.rows.back().energy / r.rows.front().energy;
  return r;
}

// ---------------------------------------------------------------------------
// Test function

double test_function(double period, double width, double x) {
  const double half = 0.5 * period;
  double y = std::fmod(x + half, period);
  if (y < 0.0) y += period;
  y -= half;  // y in [-T/2, T/2)
  if (std::abs(y) <= width) return y / width;
  if (y > half - width) return (half - y) / width;
  if (y < -half + width) return -(y + half) / width;
  return y > 0.0 ? 1.0 : -1.0;
}

namespace {

void require_width(double period, double width) {
  if (!(period > 0.0) || !(width > 0.0) || !(width < 0.25 * period)) {
    throw InvalidArgument("test function needs 0 < d < T/4");
  }
}

// Breakpoints of h on [lo, hi] shifted by -z, i.e. the kinks of x -> h(x + z).
void add_kinks(double period, double width, double z, double lo, double hi, std::vector<double>& out) {
  const double half = 0.5 * period;
  const int kmin = static_cast<int>(std::floor((lo + z - width) / half)) - 1;
  const int kmax = static_cast<int>(std::ceil((hi + z + width) / half)) + 1;
  for (int k = kmin; k <= kmax; ++k) {
    for (double p : {k * half - width - z, k * half + width - z}) {
      if (p > lo && p < hi) out.push_back(p);
    }
  }
}

}  // namespace

double structure_function(double period, double width, double z) {
  require_width(period, width);
  const double half = 0.5 * period;
  std::vector<double> cuts{-half, half};
  add_kinks(period, width, 0.0, -half, half, cuts);
  add_kinks(period, width, z, -half, half, cuts);
  std::sort(cuts.begin(), cuts.end());
  static const numerics::QuadratureRule unit = numerics::gauss_legendre(3, 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double len = cuts[p + 1] - a;
    if (len <= 0.0) continue;
    for (std::size_t q = 0; q < unit.size(); ++q) {
      const double x = a + len * unit.nodes[q];
      const double diff = test_function(period, width, x) - test_function(period, width, x + z);
      sum += len * unit.weights[q] * diff * diff;
    }
  }
  return sum;
}

namespace {

struct Piece {
  double lo;
  double hi;
  bool ramp;
  double center;  // ramp center
  double slope;   // ramp slope
  double level;   // plateau value

  double value(double x) const { return ramp ? slope * (x - center) : level; }
};

// Pieces of h on [lo, hi]: ramps around k T/2, plateaus in between.
std::vector<Piece> pieces(double period, double width, double lo, double hi) {
  const double half = 0.5 * period;
  std::vector<Piece> out;
  const int kmin = static_cast<int>(std::floor(lo / half)) - 1;
  const int kmax = static_cast<int>(std::ceil(hi / half)) + 1;
  for (int k = kmin; k <= kmax; ++k) {
    const double c = k * half;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double r_lo = std::max(lo, c - width);
    const double r_hi = std::min(hi, c + width);
    if (r_hi > r_lo) out.push_back({r_lo, r_hi, true, c, sign / width, 0.0});
    const double p_lo = std::max(lo, c + width);
    const double p_hi = std::min(hi, c + half - width);
    if (p_hi > p_lo) out.push_back({p_lo, p_hi, false, 0.0, 0.0, sign});
  }
  return out;
}

// int_p^q |z|^{-1-2s} dz for an interval not containing 0.
double kernel_mass(double p, double q, double s) {
  if (q <= p) return 0.0;
  if (p >= 0.0) return (std::pow(p, -2.0 * s) - std::pow(q, -2.0 * s)) / (2.0 * s);
  return (std::pow(-q, -2.0 * s) - std::pow(-p, -2.0 * s)) / (2.0 * s);
}

// Outer integral over [lo, hi] split where the band edges t +- T/2 cross the
// endpoints of the partner piece.
double outer_integral(const std::function<double(double)>& f, double lo, double hi,
                      const Piece& partner, double half, double tol) {
  std::vector<double> cuts{lo, hi};
  for (double e : {partner.lo - half, partner.lo + half, partner.hi - half, partner.hi + half}) {
    if (e > lo && e < hi) cuts.push_back(e);
  }
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += numerics::integrate_tanh_sinh(f, cuts[i], cuts[i + 1], tol, tol);
  }
  return sum;
}

}  // namespace

bool TestFunctionReport::regions_hold() const noexcept {
  const auto ok = [](double v, double b) { return v <= b * (1.0 + 1e-9) + 1e-12; };
  return ok(far, far_bound) && ok(plateaus, plateaus_bound) &&
         ok(plateau_ramp, plateau_ramp_bound) && ok(ramps, ramps_bound);
}

TestFunctionReport test_function_bound(const FracOrder& s, double period, double d,
                                       const DoubleWell& F, double tol) {
  require_width(period, d);
  const double sv = s.s();
  const double half = 0.5 * period;
  TestFunctionReport r;
  r.period = period;
  r.width = d;

  // Far part through the structure function and the image sum
  // sum_k (z + kT)^{-1-2s} = T^{-1-2s} zeta(1+2s, z/T).
  {
    std::vector<double> cuts{half, period + half};
    for (double c : {half + 2.0 * d, period - 2.0 * d, period, period + 2.0 * d,
                     period + half - 2.0 * d}) {
      cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    const double scale = std::pow(period, -1.0 - 2.0 * sv);
    const auto f = [&](double z) {
      return structure_function(period, d, z) * scale *
             numerics::hurwitz_zeta(1.0 + 2.0 * sv, z / period);
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      r.far += 2.0 * numerics::integrate_tanh_sinh(f, cuts[i], cuts[i + 1], tol);
    }
  }

  // Near band |x - t| < T/2, classified by the pieces holding x and t.
  const std::vector<Piece> xs = pieces(period, d, -half, half);
  const std::vector<Piece> ts = pieces(period, d, -period, period);
  for (const Piece& A : xs) {
    for (const Piece& B : ts) {
      if (B.lo >= A.hi + half || B.hi <= A.lo - half) continue;
      if (!A.ramp && !B.ramp) {
        if (A.level == B.level) continue;
        const auto f = [&](double x) {
          return 4.0 * kernel_mass(std::max(B.lo, x - half) - x, std::min(B.hi, x + half) - x, sv);
        };
        r.plateaus += outer_integral(f, A.lo, A.hi, B, half, tol);
      } else if (A.ramp != B.ramp) {
        // Outer over the ramp variable, inner over the plateau in closed form.
        const Piece& ramp = A.ramp ? A : B;
        const Piece& plateau = A.ramp ? B : A;
        const auto f = [&](double t) {
          const double gap = plateau.level - ramp.value(t);
          if (gap == 0.0) return 0.0;
          return gap * gap *
                 kernel_mass(std::max(plateau.lo, t - half) - t,
                             std::min(plateau.hi, t + half) - t, sv);
        };
        r.plateau_ramp += outer_integral(f, ramp.lo, ramp.hi, plateau, half, tol);
      } else {
        const bool same = A.center == B.center;
        const double p = 2.0 - 2.0 * sv;
        const auto f = [&](double x) {
          const double lo = std::max(B.lo, x - half);
          const double hi = std::min(B.hi, x + half);
          if (!(hi > lo)) return 0.0;
          if (same) {
            // slope^2 int_lo^hi |x - t|^{1-2s} dt
            const double left = std::max(x - lo, 0.0);
            const double right = std::max(hi - x, 0.0);
            const double inner = x <= lo   ? std::pow(hi - x, p) - std::pow(lo - x, p)
                                 : x >= hi ? std::pow(x - lo, p) - std::pow(x - hi, p)
                                           : std::pow(left, p) + std::pow(right, p);
            return A.slope * A.slope * inner / p;
          }
          const auto g = [&](double t) {
            const double diff = A.value(x) - B.value(t);
            return diff * diff * std::pow(std::abs(x - t), -1.0 - 2.0 * sv);
          };
          const double gap = std::min(std::abs(x - lo), std::abs(x - hi));
          if (hi - lo <= 0.1 * gap) {
            static const numerics::QuadratureRule unit = numerics::gauss_legendre(10, 0.0, 1.0);
            return (hi - lo) * unit.integrate([&](double v) { return g(lo + (hi - lo) * v); });
          }
          return numerics::integrate_tanh_sinh(g, lo, hi, tol, tol);
        };
        r.ramps += outer_integral(f, A.lo, A.hi, B, half, tol);
      }
    }
  }

  r.far_bound = 4.0 * std::pow(2.0, 2.0 * sv) * std::pow(period, 1.0 - 2.0 * sv) / sv;
  const double plateau_kernel =
      std::abs(sv - 0.5) < 1e-12
          ? std::log((half + 2.0 * d) / (2.0 * d))
          : (std::pow(half + 2.0 * d, 1.0 - 2.0 * sv) - std::pow(2.0 * d, 1.0 - 2.0 * sv)) /
                (1.0 - 2.0 * sv);
  r.plateaus_bound = 4.0 * (4.0 / (2.0 * sv)) * plateau_kernel;
  r.plateau_ramp_bound =
      8.0 * std::pow(2.0 * d, 3.0 - 2.0 * sv) / (2.0 * sv * (3.0 - 2.0 * sv) * d * d);
  r.ramps_bound = std::pow(2.0, 5.0 - 2.0 * sv) * std::pow(d, 1.0 - 2.0 * sv) /
                      ((2.0 - 2.0 * sv) * (3.0 - 2.0 * sv)) +
                  64.0 * d * d * std::pow(half - 2.0 * d, -1.0 - 2.0 * sv);

  const double g = regime_scale(s, period);
  r.far_constant = r.far / std::pow(period, 1.0 - 2.0 * sv);
  r.plateaus_constant = r.plateaus / g;
  r.plateau_ramp_constant = r.plateau_ramp;
  r.ramps_constant = r.ramps / std::pow(d, 1.0 - 2.0 * sv);

  r.double_integral = r.far + r.plateaus + r.plateau_ramp + r.ramps;
  // h runs linearly through [0, 1] twice on [0, T/2] and sits at the wells otherwise.
  const numerics::QuadratureRule rule = numerics::gauss_legendre(F.degree() / 2 + 2, 0.0, 1.0);
  r.potential = 2.0 * d * rule.integrate([&](double t) { return F(t); }) +
                (half - 2.0 * d) * F(1.0);
  r.total = r.double_integral + r.potential;
  r.total_constant = r.total / g;
  // <h, (-d_xx)^s h> = (C_sing / 2) G.
  const double quadratic = 0.5 * s.c_sing() * r.double_integral;
  r.energy = quadratic / (4.0 * s.d_s()) + r.potential;
  r.variational_energy = 0.25 * quadratic + r.potential;
  return r;
}

std::vector<TestFunctionReport> test_function_width_scan(const FracOrder& s, double period,
                                                         const DoubleWell& F, int count,
                                                         double d_min) {
  if (count < 2) throw InvalidArgument("width scan needs two or more widths");
  const double d_max = 0.99 * 0.25 * period;
  require_width(period, d_min);
  if (!(d_min < d_max)) throw InvalidArgument("minimum width must lie below T/4");
  std::vector<TestFunctionReport> out;
  for (int k = 0; k < count; ++k) {
    const double d = d_min * std::pow(d_max / d_min, static_cast<double>(k) / (count - 1));
    out.push_back(test_function_bound(s, period, d, F));
  }
  return out;
}

}  // namespace fracperiodic
