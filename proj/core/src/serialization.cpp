#include "fracperiodic/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fracperiodic/errors.hpp"

namespace fracperiodic::io {

using nlohmann::json;

namespace {

json function_object(const PeriodicFunction& u) {
  const auto a = u.sin_coeffs();
  const auto b = u.cos_coeffs();
  return json{{"T", u.period()},
              {"N", u.order()},
              {"odd", u.odd()},
              {"a", std::vector<double>(a.begin() + 1, a.end())},
              {"b", std::vector<double>(b.begin(), b.end())}};
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidArgument(std::string("function JSON: missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw InvalidArgument(std::string("function JSON: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

PeriodicFunction function_from_object(const json& j) {
  if (!j.is_object()) throw InvalidArgument("function JSON: expected an object");
  if (!j.contains("T") || !j.at("T").is_number()) throw InvalidArgument("function JSON: missing number 'T'");
  const double period = j.at("T").get<double>();
  std::vector<double> b = number_array(j, "b");
  std::vector<double> a = number_array(j, "a");
  bool odd = false;
  if (j.contains("odd")) {
    if (!j.at("odd").is_boolean()) throw InvalidArgument("function JSON: 'odd' must be a boolean");
    odd = j.at("odd").get<bool>();
  }
  if (j.contains("N")) {
    if (!j.at("N").is_number_integer()) throw InvalidArgument("function JSON: 'N' must be an integer");
    const auto n = j.at("N").get<long long>();
    if (n < 0 || static_cast<std::size_t>(n) + 1 != b.size()) {
      throw InvalidArgument("function JSON: 'N' does not match the length of 'b'");
    }
  }
  if (a.size() != b.size() && a.size() + 1 != b.size()) {
    throw InvalidArgument("function JSON: 'a' must have N or N+1 entries");
  }
  return {period, std::move(b), std::move(a), odd};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string to_json(const PeriodicFunction& u) { return function_object(u).dump() + "\n"; }

PeriodicFunction function_from_json(const std::string& text) {
  return function_from_object(parse(text));
}

PeriodicFunction read_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return function_from_json(buf.str());
}

const char* to_string(Classification c) noexcept {
  return c == Classification::trivial ? "trivial" : "nonconstant";
}

std::string solution_to_json(const SemilinearSolution& sol) {
  json j = function_object(sol.u);
  j["residual"] = sol.residual;
  j["J"] = sol.energy;
  j["E"] = sol.variational_energy;
  j["amplitude"] = sol.amplitude;
  j["classification"] = to_string(sol.classification);
  return j.dump() + "\n";
}

std::string linear_solution_to_json(const CoerciveSolution& sol) {
  json j = function_object(sol.u);
  j["residual"] = sol.residual;
  j["stability_constant"] = sol.stability_constant;
  return j.dump() + "\n";
}

std::string linear_solution_to_json(const FredholmResult& sol) {
  json j = function_object(sol.solution);
  j["residual"] = sol.residual;
  j["unique"] = sol.unique();
  json kernel = json::array();
  for (const auto& v : sol.kernel.vectors) kernel.push_back(function_object(v));
  j["kernel"] = kernel;
  return j.dump() + "\n";
}

std::string branch_points_to_json(const Branch& branch) {
  json arr = json::array();
  for (const auto& p : branch.points) {
    arr.push_back({{"lambda", p.lambda},
                   {"amplitude", p.amplitude},
                   {"residual", p.residual},
                   {"sigma_min", finite_or_null(p.sigma_min)},
                   {"u", function_object(p.u)}});
  }
  return arr.dump() + "\n";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (const auto& h : header) *this << h;
  end_row();
}

void CsvWriter::separator() {
  if (filled_ == columns_) throw InvalidArgument("CSV row has too many columns");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  separator();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw InvalidArgument("CSV row has too few columns");
  out_ << '\n';
  filled_ = 0;
}

void write_eigen_csv(std::ostream& out, const std::vector<EigenPair>& pairs) {
  CsvWriter csv(out, {"index", "lambda"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    csv << static_cast<int>(i) << pairs[i].lambda;
    csv.end_row();
  }
}

void write_branch_csv(std::ostream& out, const Branch& branch) {
  CsvWriter csv(out, {"lambda", "amplitude", "residual", "sigma_min"});
  for (const auto& p : branch.points) {
    csv << p.lambda << p.amplitude << p.residual << p.sigma_min;
    csv.end_row();
  }
}

void write_t0_csv(std::ostream& out, const T0BoundReport& report) {
  CsvWriter csv(out, {"lambda", "T", "amplitude", "residual_rescaled", "residual_original"});
  for (const auto& p : report.samples) {
    csv << p.lambda << p.period << p.amplitude << p.residual_rescaled << p.residual_original;
    csv.end_row();
  }
}

void write_hamiltonian_csv(std::ostream& out, const HamiltonianReport& report) {
  CsvWriter csv(out, {"x", "w", "F", "deviation"});
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    csv << report.x[i] << report.w[i] << report.potential[i] << report.values[i] - report.constant;
    csv.end_row();
  }
}

void write_modica_csv(std::ostream& out, const ModicaReport& report) {
  CsvWriter csv(out, {"x", "y", "v"});
  const std::size_t nx = report.x.size();
  for (std::size_t j = 0; j < report.y.size(); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      csv << report.x[i] << report.y[j] << report.values[j * nx + i];
      csv.end_row();
    }
  }
}

void write_scan_csv(std::ostream& out, const EnergyScanReport& report) {
  CsvWriter csv(out, {"T", "J", "slope_so_far", "E", "sigma", "amplitude", "residual"});
  for (const auto& r : report.rows) {
    csv << r.period << r.energy << r.slope_so_far << r.variational_energy << r.sigma << r.amplitude
        << r.residual;
    csv.end_row();
  }
}

void write_test_function_csv(std::ostream& out, const TestFunctionReport& r) {
  const double none = std::nan("");
  CsvWriter csv(out, {"region", "value", "bound", "constant"});
  auto row = [&](const std::string& name, double value, double bound, double constant) {
    csv << name << value << bound << constant;
    csv.end_row();
  };
  row("far", r.far, r.far_bound, r.far_constant);
  row("plateaus", r.plateaus, r.plateaus_bound, r.plateaus_constant);
  row("plateau_ramp", r.plateau_ramp, r.plateau_ramp_bound, r.plateau_ramp_constant);
  row("ramps", r.ramps, r.ramps_bound, r.ramps_constant);
  row("double_integral", r.double_integral,
      r.far_bound + r.plateaus_bound + r.plateau_ramp_bound + r.ramps_bound, none);
  row("potential", r.potential, none, none);
  row("total", r.total, none, r.total_constant);
  row("J", r.energy, none, none);
  row("E", r.variational_energy, none, none);
}

}  // namespace fracperiodic::io
