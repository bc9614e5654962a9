#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "fracperiodic/bifurcation.hpp"
#include "fracperiodic/diagnostics.hpp"
#include "fracperiodic/errors.hpp"
#include "fracperiodic/extension.hpp"
#include "fracperiodic/linear.hpp"
#include "fracperiodic/semilinear.hpp"
#include "fracperiodic/serialization.hpp"
#include "fracperiodic/spectral.hpp"
#include "run_config.hpp"

namespace fracperiodic::cli {

namespace {

using io::format_double;

/// Where a command writes its main artifact, plus the summary stream.
struct Sink {
  std::ostringstream data;
  std::ostream& err;
};

using Command = std::function<void(const RunConfig&, Sink&)>;

FracOrder order_of(const RunConfig& cfg) { return FracOrder(cfg.number("s")); }

DoubleWell potential_of(const RunConfig& cfg) {
  DoubleWell F = parse_potential(cfg.text("potential"));
  try {
    F.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--potential: ") + e.what());
  }
  return F;
}

std::optional<PeriodicFunction> optional_function(const RunConfig& cfg, const std::string& key) {
  if (!cfg.is_set(key)) return std::nullopt;
  return io::read_function(cfg.text(key));
}

int jobs_of(const RunConfig& cfg) {
  const int jobs = cfg.integer("jobs");
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
  return jobs;
}

SolveConfig solve_config(const RunConfig& cfg, Symmetry symmetry) {
  SolveConfig sc;
  sc.symmetry = symmetry;
  if (cfg.has("N")) sc.order = cfg.integer("N");
  if (cfg.has("seed")) sc.seed = cfg.unsigned_integer("seed");
  if (cfg.has("multistarts")) sc.multistarts = cfg.integer("multistarts");
  if (cfg.has("newton-tol")) sc.newton_tol = cfg.number("newton-tol");
  return sc;
}

PeriodicFunction solution_input(const RunConfig& cfg, const FracOrder& s, Symmetry symmetry) {
  if (auto u = optional_function(cfg, "input")) return *u;
  const SemilinearSolution sol =
      minimize_energy(cfg.number("T"), s, potential_of(cfg), solve_config(cfg, symmetry));
  if (sol.classification == Classification::trivial) {
    throw NoConvergence("only the trivial solution was found on this period", sol.residual);
  }
  return sol.u;
}

void cmd_apply(const RunConfig& cfg, Sink& sink) {
  const PeriodicFunction u = io::read_function(cfg.text("input"));
  sink.data << io::to_json(frac_laplacian(u, order_of(cfg)));
}

void cmd_eig(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const double period = cfg.number("T");
  const int count = cfg.integer("count");
  const int order = cfg.integer("N");
  if (auto V = optional_function(cfg, "V")) {
    if (cfg.is_set("k")) throw UsageError("--k and --V are mutually exclusive");
    if (std::abs(V->period() - period) > 1e-12 * period) throw UsageError("--V has a different period than --T");
    io::write_eigen_csv(sink.data, schrodinger_fractional_spectrum(*V, s, count, order).pairs);
    return;
  }
  const auto k = optional_function(cfg, "k");
  if (k && std::abs(k->period() - period) > 1e-12 * period) throw UsageError("--k has a different period than --T");
  const GalerkinOperator op = k ? GalerkinOperator(s, period, order, *k) : GalerkinOperator(s, period, order);
  io::write_eigen_csv(sink.data, eigenvalue_set(op, count));
}

void cmd_solve_linear(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const PeriodicFunction g = io::read_function(cfg.text("g"));
  const auto k = optional_function(cfg, "k");
  if (k && std::abs(k->period() - g.period()) > 1e-12 * g.period()) {
    throw UsageError("--k has a different period than --g");
  }
  int order = cfg.integer("N");
  if (order == 0) order = std::max({64, g.order(), k ? k->order() : 0});
  const GalerkinOperator op =
      k ? GalerkinOperator(s, g.period(), order, *k) : GalerkinOperator(s, g.period(), order);
  const PeriodicFunction rhs = g.with_order(order);
  if (cfg.is_set("mu")) {
    const CoerciveSolution sol = solve_coercive(op, cfg.number("mu"), rhs);
    sink.data << io::linear_solution_to_json(sol);
    sink.err << "residual " << format_double(sol.residual) << ", stability constant "
             << format_double(sol.stability_constant) << "\n";
  } else {
    const FredholmResult sol = solve_fredholm(op, rhs, cfg.number("kernel-tol"));
    sink.data << io::linear_solution_to_json(sol);
    sink.err << "residual " << format_double(sol.residual) << ", kernel dimension "
             << sol.kernel.dimension() << "\n";
  }
}

void cmd_solve(const RunConfig& cfg, Sink& sink) {
  const std::string& sym = cfg.text("symmetry");
  if (sym != "odd" && sym != "even") throw UsageError("invalid value '" + sym + "' for --symmetry");
  const SemilinearSolution sol = minimize_energy(cfg.number("T"), order_of(cfg), potential_of(cfg),
                                                 solve_config(cfg, sym == "odd" ? Symmetry::odd : Symmetry::even));
  sink.data << io::solution_to_json(sol);
  sink.err << io::to_string(sol.classification) << ", residual " << format_double(sol.residual) << ", J "
           << format_double(sol.energy) << "\n";
}

void cmd_min_period(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const DoubleWell F = potential_of(cfg);
  SolveConfig sc = solve_config(cfg, Symmetry::odd);
  sc.jobs = jobs_of(cfg);
  const double bound = min_period_bound(s, F);
  const double t_hi = cfg.is_set("t-hi") ? cfg.number("t-hi") : 1.5 * bound;
  const MinPeriodResult r = find_min_period(s, F, t_hi, cfg.number("tol"), sc);
  io::CsvWriter csv(sink.data, {"estimate", "trivial_below", "bound", "evaluations"});
  csv << r.estimate << r.trivial_below << r.bound << r.evaluations;
  csv.end_row();
}

void cmd_continue(const RunConfig& cfg, Sink& sink) {
  ContinuationOptions opts;
  opts.order = cfg.integer("N");
  opts.newton_tol = cfg.number("newton-tol");
  const Branch branch = continue_branch(order_of(cfg), potential_of(cfg), cfg.number("lambda-start"),
                                        cfg.integer("steps"), cfg.number("ds"), opts);
  io::write_branch_csv(sink.data, branch);
  if (cfg.is_set("points")) {
    std::ofstream f(cfg.text("points"));
    if (!f) throw UsageError("cannot write --points '" + cfg.text("points") + "'");
    f << io::branch_points_to_json(branch);
  }
  sink.err << "bifurcation at lambda " << format_double(branch.bifurcation_lambda) << ", "
           << to_string(branch.direction) << "\n";
}

void cmd_t0_bound(const RunConfig& cfg, Sink& sink) {
  const T0BoundReport r = verify_t0_bound(order_of(cfg), potential_of(cfg), cfg.number("lambda-max"),
                                          cfg.number("lambda-step"), cfg.integer("N"));
  io::write_t0_csv(sink.data, r);
  sink.err << "bound " << format_double(r.bound) << ", smallest period " << format_double(r.smallest_period())
           << ", max residual " << format_double(r.max_residual()) << "\n";
}

void cmd_hamiltonian(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const DoubleWell F = potential_of(cfg);
  const PeriodicFunction u = solution_input(cfg, s, Symmetry::odd);
  const HamiltonianReport r = hamiltonian_samples(u, s, F, cfg.integer("samples"));
  io::write_hamiltonian_csv(sink.data, r);
  sink.err << "C_T " << format_double(r.constant) << ", max deviation " << format_double(r.max_deviation) << "\n";
  if (r.max_deviation > cfg.number("tol")) {
    throw IdentityViolation("conserved quantity varies along the solution", r.x[r.worst], r.max_deviation);
  }
}

void cmd_modica(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const DoubleWell F = potential_of(cfg);
  const PeriodicFunction u = solution_input(cfg, s, Symmetry::even);
  ModicaOptions opts;
  opts.nx = cfg.integer("nx");
  opts.ny = cfg.integer("ny");
  opts.tol = cfg.number("tol");
  const ModicaReport r = modica_check(u, s, F, opts);
  io::write_modica_csv(sink.data, r);
  sink.err << "C_hat " << format_double(r.c_hat) << ", lower bound " << format_double(r.lower_bound)
           << ", max v " << format_double(r.max_value) << "\n";
}

void cmd_energy_scan(const RunConfig& cfg, Sink& sink) {
  const EnergyScanReport r = energy_scan(order_of(cfg), potential_of(cfg), cfg.number_list("T-list"),
                                         solve_config(cfg, Symmetry::odd), jobs_of(cfg));
  io::write_scan_csv(sink.data, r);
  sink.err << to_string(r.regime) << ", slope " << format_double(r.slope) << "\n";
}

void cmd_test_bound(const RunConfig& cfg, Sink& sink) {
  const TestFunctionReport r = test_function_bound(order_of(cfg), cfg.number("T"), cfg.number("d"),
                                                   potential_of(cfg), cfg.number("quad-tol"));
  io::write_test_function_csv(sink.data, r);
  sink.err << (r.regions_hold() ? "all region bounds hold" : "a region bound fails") << "\n";
}

void cmd_extend(const RunConfig& cfg, Sink& sink) {
  const FracOrder s = order_of(cfg);
  const PeriodicFunction u = io::read_function(cfg.text("input"));
  const std::string& method = cfg.text("method");
  if (method != "bessel" && method != "poisson") throw UsageError("invalid value '" + method + "' for --method");
  const ExtensionField field = method == "bessel" ? extend_bessel(u, s) : extend_poisson(u, s);
  const int nx = cfg.integer("nx");
  const int ny = cfg.integer("ny");
  if (nx < 1 || ny < 2) throw UsageError("--nx must be at least 1 and --ny at least 2");
  double y_max = cfg.number("y-max");
  if (y_max == 0.0) y_max = u.period() / std::numbers::pi;
  if (!(y_max > 0.0)) throw UsageError("--y-max must be positive");
  io::CsvWriter csv(sink.data, {"x", "y", "U", "Ux", "yaUy"});
  for (int j = 0; j < ny; ++j) {
    const double y = y_max * j / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      const double x = u.period() * i / nx;
      csv << x << y << field.value(x, y) << field.dx(x, y) << field.weighted_dy(x, y);
      csv.end_row();
    }
  }
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"apply", cmd_apply},           {"eig", cmd_eig},
      {"solve-linear", cmd_solve_linear}, {"solve", cmd_solve},
      {"min-period", cmd_min_period}, {"continue", cmd_continue},
      {"t0-bound", cmd_t0_bound},     {"hamiltonian", cmd_hamiltonian},
      {"modica", cmd_modica},         {"energy-scan", cmd_energy_scan},
      {"test-bound", cmd_test_bound}, {"extend", cmd_extend},
  };
  return table;
}

std::string default_jobs() {
  const char* env = std::getenv("FRACPERIODIC_JOBS");
  if (!env || !*env) return "1";
  return env;
}

void describe(const Error& e, std::ostream& err) {
  err << "error: " << e.what();
  if (auto* p = dynamic_cast<const SolvabilityViolation*>(&e)) {
    err << " [inner_product=" << format_double(p->inner_product()) << "]";
  } else if (auto* p = dynamic_cast<const IdentityViolation*>(&e)) {
    err << " [x=" << format_double(p->x()) << " deviation=" << format_double(p->deviation()) << "]";
  } else if (auto* p = dynamic_cast<const InequalityViolation*>(&e)) {
    err << " [x=" << format_double(p->x()) << " y=" << format_double(p->y())
        << " excess=" << format_double(p->excess()) << "]";
  } else if (auto* p = dynamic_cast<const NotCoercive*>(&e)) {
    err << " [min_eigenvalue=" << format_double(p->min_eigenvalue()) << "]";
  } else if (auto* p = dynamic_cast<const NoConvergence*>(&e)) {
    err << " [residual=" << format_double(p->residual()) << "]";
  } else if (auto* p = dynamic_cast<const SingularJacobian*>(&e)) {
    err << " [sigma_min=" << format_double(p->sigma_min()) << "]";
  } else if (auto* p = dynamic_cast<const BranchLost*>(&e)) {
    err << " [lambda=" << format_double(p->lambda()) << "]";
  } else if (auto* p = dynamic_cast<const InconsistentBracket*>(&e)) {
    err << " [T=" << format_double(p->period()) << "]";
  } else if (auto* p = dynamic_cast<const QuadratureNonConvergence*>(&e)) {
    err << " [error_estimate=" << format_double(p->error_estimate()) << "]";
  } else if (auto* p = dynamic_cast<const TruncationNotConverged*>(&e)) {
    err << " [change=" << format_double(p->change()) << "]";
  }
  err << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic fractional Laplacian toolkit", "fracperiodic"};
  app.require_subcommand(1);

  struct Parsed {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> flags;
    std::string config;
    bool dry_run = false;
  };
  std::map<std::string, Parsed> parsed;
  for (const CommandSpec& spec : command_specs()) {
    Parsed& p = parsed[spec.name];
    p.app = app.add_subcommand(spec.name, spec.help);
    for (const KeySpec& key : spec.keys) {
      std::string help = key.help;
      if (key.required) help += " (required)";
      else if (!key.default_value.empty()) help += " [" + key.default_value + "]";
      p.app->add_option("--" + key.name, p.flags[key.name], help);
    }
    p.app->add_option("--config", p.config, "flat key=value file; flags take precedence");
    p.app->add_flag("--dry-run", p.dry_run, "print the resolved config and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  // Partial output (the hamiltonian samples behind an IdentityViolation) is
  // still written when a domain error follows it.
  Sink sink{{}, err};
  std::string output_path;
  const auto emit = [&] {
    if (output_path == "-") {
      out << sink.data.str();
      return;
    }
    std::ofstream f(output_path);
    if (!f) throw UsageError("cannot write --output '" + output_path + "'");
    f << sink.data.str();
  };

  try {
    const CommandSpec* spec = nullptr;
    Parsed* p = nullptr;
    for (const CommandSpec& c : command_specs()) {
      if (parsed[c.name].app->parsed()) {
        spec = &c;
        p = &parsed[c.name];
      }
    }
    RunConfig cfg = p->config.empty() ? RunConfig(spec->name) : RunConfig::load(p->config, *spec);
    for (const KeySpec& key : spec->keys) {
      if (p->app->count("--" + key.name) > 0) cfg.set(key.name, p->flags[key.name]);
    }
    for (const KeySpec& key : spec->keys) {
      if (cfg.is_set(key.name)) continue;
      if (key.required) throw UsageError("missing --" + key.name);
      cfg.set(key.name, key.name == "jobs" ? default_jobs() : key.default_value);
    }
    if (p->dry_run) {
      out << cfg.canonical();
      return success;
    }

    output_path = cfg.text("output");
    commands().at(spec->name)(cfg, sink);
    emit();
    return success;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const Error& e) {
    describe(e, err);
    if (sink.data.tellp() > 0) {
      try {
        emit();
      } catch (const UsageError& w) {
        err << "usage error: " << w.what() << "\n";
      }
    }
    return domain_error;
  }
}

}  // namespace fracperiodic::cli
