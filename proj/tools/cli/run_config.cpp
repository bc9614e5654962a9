#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fracperiodic::cli {

namespace {

KeySpec req(std::string name, std::string help) { return {std::move(name), "", std::move(help), true}; }
KeySpec opt(std::string name, std::string def, std::string help) {
  return {std::move(name), std::move(def), std::move(help), false};
}

const KeySpec output_key = opt("output", "-", "output path, '-' for stdout");
const KeySpec potential_key = opt("potential", "quartic", "quartic, quartic:<scale> or taylor:F0,F1,...");
const KeySpec seed_key = opt("seed", "12345", "seed of the random multistarts");
const KeySpec newton_key = opt("newton-tol", "1e-10", "Newton residual tolerance");
const KeySpec jobs_key = opt("jobs", "", "worker threads (default: FRACPERIODIC_JOBS or 1)");

std::vector<CommandSpec> build_specs() {
  return {
      {"apply", "apply (-d_xx)^s to a function",
       {req("s", "fractional order in (0,1)"), req("input", "function JSON"), output_key}},
      {"eig", "lowest eigenvalues of (-d_xx)^s + k or (-d_xx + V)^s",
       {req("s", "fractional order in (0,1)"), req("T", "period"), opt("count", "4", "number of eigenvalues"),
        opt("N", "64", "truncation order"), opt("k", "", "function JSON of the additive potential k"),
        opt("V", "", "function JSON of V >= 0; selects (-d_xx + V)^s"), output_key}},
      {"solve-linear", "solve ((-d_xx)^s + k + mu) u = g",
       {req("s", "fractional order in (0,1)"), req("g", "function JSON of the right-hand side"),
        opt("k", "", "function JSON of k (default 0)"),
        opt("mu", "", "coercive shift; unset selects the Fredholm solver"),
        opt("N", "0", "truncation order (0: max(64, order of g and k))"),
        opt("kernel-tol", "1e-9", "relative eigenvalue threshold of the kernel"), output_key}},
      {"solve", "nonconstant periodic solution of (-d_xx)^s u + F'(u) = 0",
       {req("s", "fractional order in (0,1)"), req("T", "period"), potential_key,
        opt("N", "0", "truncation order (0: automatic)"), opt("symmetry", "odd", "odd or even"),
        opt("multistarts", "6", "number of starts"), seed_key, newton_key, output_key}},
      {"min-period", "smallest period carrying a nonconstant solution",
       {req("s", "fractional order in (0,1)"), potential_key,
        opt("t-hi", "", "upper bracket (default 1.5 times the bifurcation bound)"),
        opt("tol", "1e-3", "bracket width"), opt("N", "0", "truncation order (0: automatic)"), seed_key,
        jobs_key, output_key}},
      {"continue", "pseudo-arclength continuation of the rescaled branch",
       {req("s", "fractional order in (0,1)"), potential_key,
        opt("lambda-start", "1", "start near this bifurcation value"), opt("steps", "40", "arclength steps"),
        opt("ds", "0.05", "arclength step"), opt("N", "64", "sine modes on period 2 pi"), newton_key,
        opt("points", "", "write per-point solution JSON to this path"), output_key}},
      {"t0-bound", "solutions above the first bifurcation mapped to their periods",
       {req("s", "fractional order in (0,1)"), potential_key, opt("lambda-max", "4", "largest lambda"),
        opt("lambda-step", "0.01", "lambda increment"), opt("N", "0", "truncation order (0: automatic)"),
        output_key}},
      {"hamiltonian", "samples of the conserved quantity along a solution",
       {req("s", "fractional order in (0,1)"), opt("input", "", "solution JSON (default: solve on T)"),
        opt("T", "8", "period when solving"), potential_key, opt("samples", "64", "sample points"),
        opt("tol", "1e-5", "allowed deviation from the mean"), seed_key, output_key}},
      {"modica", "Modica-type quantity of an even solution on a grid",
       {req("s", "fractional order in (0,1)"), opt("input", "", "even solution JSON (default: solve on T)"),
        opt("T", "8", "period when solving"), potential_key, opt("nx", "64", "x points on [0, T/2]"),
        opt("ny", "64", "y points"), opt("tol", "1e-5", "allowed excess"), seed_key, output_key}},
      {"energy-scan", "energies of odd minimizers over a list of periods",
       {req("s", "fractional order in (0,1)"), potential_key,
        opt("T-list", "16,32,64,128", "comma-separated periods"), opt("N", "0", "truncation order (0: automatic)"),
        seed_key, jobs_key, output_key}},
      {"test-bound", "region breakdown of the trapezoid competitor",
       {req("s", "fractional order in (0,1)"), req("T", "period"), opt("d", "1", "ramp width"), potential_key,
        opt("quad-tol", "1e-10", "quadrature tolerance"), output_key}},
      {"extend", "extension U(x, y) and its derivatives on a grid",
       {req("s", "fractional order in (0,1)"), req("input", "function JSON"),
        opt("method", "bessel", "bessel or poisson"), opt("nx", "8", "x points on one period"),
        opt("ny", "8", "y points on [0, y-max]"), opt("y-max", "0", "top of the grid (0: T / pi)"),
        output_key}},
  };
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("invalid value '" + value + "' for --" + key);
  }
  return out;
}

}  // namespace

const KeySpec* CommandSpec::find(std::string_view key) const {
  for (const auto& k : keys) {
    if (k.name == key) return &k;
  }
  return nullptr;
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = build_specs();
  return specs;
}

const CommandSpec& command_spec(std::string_view name) {
  for (const auto& c : command_specs()) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown command '" + std::string(name) + "'");
}

RunConfig::RunConfig(std::string command) : command_(std::move(command)) {}

RunConfig RunConfig::parse(std::string_view text, const CommandSpec& spec) {
  RunConfig cfg(spec.name);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "command") {
      if (value != spec.name) throw UsageError("config is for command '" + value + "', not '" + spec.name + "'");
      continue;
    }
    if (!spec.find(key)) throw UsageError("unknown config key '" + key + "' for " + spec.name);
    if (cfg.has(key)) throw UsageError("duplicate config key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path, const CommandSpec& spec) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), spec);
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = trim(value); }

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

bool RunConfig::is_set(const std::string& key) const { return has(key) && !values_.at(key).empty(); }

std::string RunConfig::canonical() const {
  std::string out = "command=" + command_ + "\n";
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing --" + key);
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  const std::string& v = text(key);
  // from_chars for double is missing on older standard libraries.
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw UsageError("invalid value '" + v + "' for --" + key);
  }
  if (pos != v.size()) throw UsageError("invalid value '" + v + "' for --" + key);
  return out;
}

int RunConfig::integer(const std::string& key) const { return parse_number<int>(key, text(key)); }

std::uint64_t RunConfig::unsigned_integer(const std::string& key) const {
  return parse_number<std::uint64_t>(key, text(key));
}

bool RunConfig::boolean(const std::string& key) const {
  const std::string& v = text(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw UsageError("invalid value '" + v + "' for --" + key);
}

std::vector<double> RunConfig::number_list(const std::string& key) const {
  const std::string& v = text(key);
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = std::min(v.find(',', start), v.size());
    const std::string item = trim(std::string_view(v).substr(start, comma - start));
    RunConfig tmp(command_);
    tmp.values_[key] = item;
    out.push_back(tmp.number(key));
    start = comma + 1;
  }
  return out;
}

DoubleWell parse_potential(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  RunConfig tmp("potential");
  tmp.set("potential", arg);
  if (kind == "quartic") {
    return DoubleWell::quartic(arg.empty() ? 1.0 : tmp.number("potential"));
  }
  if (kind == "taylor" && !arg.empty()) return DoubleWell::from_taylor(tmp.number_list("potential"));
  throw UsageError("invalid value '" + spec + "' for --potential");
}

}  // namespace fracperiodic::cli
