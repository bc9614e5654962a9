#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cli.hpp"
#include "fracperiodic/errors.hpp"
#include "fracperiodic/serialization.hpp"
#include "oracles.hpp"
#include "json.hpp"
#include "run_config.hpp"

using namespace fracperiodic;
using namespace fracperiodic::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"fracperiodic"};
  owned.insert(owned.end(), args);
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fracperiodic_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("RunConfig") {
  TEST_CASE("parse and canonical round trip") {
    const CommandSpec& spec = command_spec("solve");
    const RunConfig cfg = RunConfig::parse("# comment\n\nT = 8\ns=0.5\ncommand=solve\n  potential =quartic:2 \n", spec);
    CHECK(cfg.number("s") == 0.5);
    CHECK(cfg.number("T") == 8.0);
    CHECK(cfg.text("potential") == "quartic:2");
    const std::string canon = cfg.canonical();
    CHECK(canon.rfind("command=solve\n", 0) == 0);
    CHECK(RunConfig::parse(canon, spec).canonical() == canon);
  }

  TEST_CASE("rejections") {
    const CommandSpec& spec = command_spec("solve");
    CHECK_THROWS_AS(RunConfig::parse("bogus=1\n", spec), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("s=0.5\ns=0.6\n", spec), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("s 0.5\n", spec), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("command=eig\n", spec), UsageError);
    CHECK_THROWS_AS(command_spec("nope"), UsageError);
    RunConfig cfg("solve");
    cfg.set("s", "0.5x");
    CHECK_THROWS_AS(cfg.number("s"), UsageError);
    cfg.set("N", "3.5");
    CHECK_THROWS_AS(cfg.integer("N"), UsageError);
    cfg.set("T", "");
    CHECK_FALSE(cfg.is_set("T"));
  }

  TEST_CASE("value parsers") {
    RunConfig cfg("energy-scan");
    cfg.set("T-list", "16, 32,64");
    CHECK(cfg.number_list("T-list") == std::vector<double>{16, 32, 64});
    CHECK(parse_potential("quartic").d2(0.0) == doctest::Approx(-1.0));
    CHECK(parse_potential("quartic:4").d2(0.0) == doctest::Approx(-4.0));
    CHECK(parse_potential("taylor:0,0,-1,0,-6").d4(0.0) == doctest::Approx(-6.0));
    CHECK_THROWS_AS(parse_potential("cubic"), UsageError);
  }

  TEST_CASE("every subcommand is registered") {
    for (const char* name : {"apply", "eig", "solve-linear", "solve", "min-period", "continue", "t0-bound",
                             "hamiltonian", "modica", "energy-scan", "test-bound", "extend"}) {
      CHECK(command_spec(name).name == name);
    }
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("function JSON round trip") {
    std::mt19937_64 rng(3);
    for (bool odd : {false, true}) {
      const PeriodicFunction u = oracle::random_function(rng, 5.5, 6, odd);
      const PeriodicFunction v = io::function_from_json(io::to_json(u));
      CHECK(v.period() == u.period());
      CHECK(v.odd() == u.odd());
      CHECK(coefficient_distance(u, v) == 0.0);
    }
    const PeriodicFunction w = io::function_from_json(R"({"T": 6.283185307179586, "N": 2, "odd": false,
      "a": [0, 1, 0], "b": [0.5, 0, 0], "note": "extra"})");
    CHECK(w.sin_coeff(1) == 1.0);
    CHECK(w.cos_coeff(0) == 0.5);
    CHECK_THROWS_AS(io::function_from_json("{\"T\": 1}"), InvalidArgument);
    CHECK_THROWS_AS(io::function_from_json("not json"), InvalidArgument);
  }

  TEST_CASE("doubles and CSV rows") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(std::nan("")) == "nan");
    CHECK(io::format_double(-INFINITY) == "-inf");
    std::ostringstream out;
    io::CsvWriter w(out, {"a", "b"});
    w << 1 << 2.5;
    w.end_row();
    CHECK(out.str() == "a,b\n1,2.5\n");
    w << 1;
    CHECK_THROWS(w.end_row());
  }
}

TEST_SUITE("run") {
  TEST_CASE("eig reproduces the flat spectrum") {
    const Result r = invoke({"eig", "--s", "0.5", "--T", "6.2832", "--count", "4"});
    REQUIRE(r.code == success);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"index", "lambda"});
    const double want[] = {0.0, 1.0, 1.0, 2.0};
    for (int i = 0; i < 4; ++i) CHECK(std::stod(rows[i + 1][1]) == doctest::Approx(want[i]).scale(1.0).epsilon(1e-5));
  }

  TEST_CASE("apply to a constant gives zero") {
    const fs::path in = scratch("const.json");
    write_file(in, io::to_json(PeriodicFunction::constant(3.0, 4, 1.7)));
    const Result r = invoke({"apply", "--s", "0.5", "--input", in.string()});
    REQUIRE(r.code == success);
    const PeriodicFunction out = io::function_from_json(r.out);
    CHECK(out.coefficient_norm() == 0.0);
    CHECK(out.period() == 3.0);
  }

  TEST_CASE("solve writes a certified solution") {
    const Result r = invoke({"solve", "--s", "0.5", "--T", "8", "--potential", "quartic"});
    REQUIRE(r.code == success);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("residual").get<double>() <= 1e-9);
    CHECK(j.at("classification").get<std::string>() == "nonconstant");
    CHECK(j.at("amplitude").get<double>() < 1.0);
    const PeriodicFunction u = io::function_from_json(r.out);
    CHECK(u.period() == 8.0);
    CHECK(u.odd());
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"solve", "--s", "2", "--T", "8"}).code == usage_error);
    CHECK(invoke({"solve", "--T", "8"}).code == usage_error);
    CHECK(invoke({"frobnicate"}).code == usage_error);
    CHECK(invoke({"solve", "--s", "0.5", "--T", "8", "--bogus", "1"}).code == usage_error);
    CHECK(invoke({"solve", "--s", "0.5", "--T", "8", "--N", "abc"}).code == usage_error);
    CHECK(invoke({"solve", "--help"}).code == success);
    const fs::path one = scratch("one.json"), sine = scratch("sine.json");
    write_file(one, io::to_json(PeriodicFunction::constant(2 * oracle::pi, 4, 1.0)));
    write_file(sine, io::to_json(PeriodicFunction::mode(2 * oracle::pi, 4, 1, 0.0, 1.0)));
    const Result v = invoke({"solve-linear", "--s", "0.5", "--g", one.string()});
    CHECK(v.code == domain_error);
    CHECK(v.err.find("SolvabilityViolation") != std::string::npos);
    const Result ok = invoke({"solve-linear", "--s", "0.5", "--g", sine.string(), "--mu", "1"});
    REQUIRE(ok.code == success);
    const PeriodicFunction half = io::function_from_json(ok.out);
    CHECK(half.sin_coeff(1) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("dry run resolves defaults, config file and flags") {
    const fs::path cfg = scratch("solve.cfg");
    write_file(cfg, "command=solve\ns=0.3\nT=9\nseed=7\n");
    const Result r = invoke({"solve", "--config", cfg.string(), "--T", "10", "--dry-run"});
    REQUIRE(r.code == success);
    const RunConfig parsed = RunConfig::parse(r.out, command_spec("solve"));
    CHECK(parsed.number("s") == 0.3);
    CHECK(parsed.number("T") == 10.0);
    CHECK(parsed.unsigned_integer("seed") == 7u);
    CHECK(parsed.integer("multistarts") == 6);
    CHECK(parsed.text("symmetry") == "odd");
    for (const CommandSpec& spec : command_specs()) {
      std::vector<std::string> args{spec.name, "--dry-run"};
      for (const KeySpec& k : spec.keys) {
        if (!k.required) continue;
        args.push_back("--" + k.name);
        args.push_back(k.name == "s" ? "0.5" : k.name == "T" ? "8" : "x.json");
      }
      std::vector<const char*> argv{"fracperiodic"};
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      CHECK(run(static_cast<int>(argv.size()), argv.data(), out, err) == success);
      CHECK(out.str().rfind("command=" + spec.name + "\n", 0) == 0);
    }
  }

  TEST_CASE("jobs default from the environment") {
    setenv("FRACPERIODIC_JOBS", "3", 1);
    const Result r = invoke({"energy-scan", "--s", "0.5", "--dry-run"});
    unsetenv("FRACPERIODIC_JOBS");
    CHECK(RunConfig::parse(r.out, command_spec("energy-scan")).integer("jobs") == 3);
    const Result d = invoke({"energy-scan", "--s", "0.5", "--dry-run"});
    CHECK(RunConfig::parse(d.out, command_spec("energy-scan")).integer("jobs") == 1);
  }

  TEST_CASE("output file and determinism") {
    const fs::path a = scratch("scan_a.csv"), b = scratch("scan_b.csv");
    REQUIRE(invoke({"energy-scan", "--s", "0.5", "--T-list", "8,12", "--output", a.string()}).code == success);
    REQUIRE(invoke({"energy-scan", "--s", "0.5", "--T-list", "8,12", "--jobs", "2", "--output", b.string()}).code == success);
    std::ifstream fa(a), fb(b);
    const std::string ta((std::istreambuf_iterator<char>(fa)), {}), tb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(!ta.empty());
    CHECK(ta == tb);
    CHECK(ta.rfind("T,J,slope_so_far,E,sigma,amplitude,residual\n", 0) == 0);
  }

  TEST_CASE("hamiltonian negative control exits with a domain error") {
    const Result good = invoke({"solve", "--s", "0.5", "--T", "8"});
    REQUIRE(good.code == success);
    PeriodicFunction u = io::function_from_json(good.out);
    u = u + PeriodicFunction::mode(8.0, u.order(), 3, 0.0, 0.05).as_odd();
    const fs::path in = scratch("perturbed.json");
    write_file(in, io::to_json(u));
    const Result r = invoke({"hamiltonian", "--s", "0.5", "--input", in.string()});
    CHECK(r.code == domain_error);
    CHECK(r.err.find("IdentityViolation") != std::string::npos);
    CHECK(r.out.rfind("x,w,F,deviation\n", 0) == 0);
  }

  TEST_CASE("test-bound and extend outputs") {
    const Result t = invoke({"test-bound", "--s", "0.25", "--T", "32"});
    REQUIRE(t.code == success);
    const auto rows = parse_csv(t.out);
    CHECK(rows[0] == std::vector<std::string>{"region", "value", "bound", "constant"});
    CHECK(rows.size() == 10);
    const fs::path in = scratch("sin.json");
    write_file(in, io::to_json(PeriodicFunction::mode(2 * oracle::pi, 2, 1, 0.0, 1.0)));
    const Result e = invoke({"extend", "--s", "0.5", "--input", in.string(), "--nx", "4", "--ny", "3"});
    REQUIRE(e.code == success);
    const auto erows = parse_csv(e.out);
    REQUIRE(erows.size() == 13);
    for (std::size_t i = 1; i < erows.size(); ++i) {
      const double x = std::stod(erows[i][0]), y = std::stod(erows[i][1]);
      CHECK(std::stod(erows[i][2]) == doctest::Approx(std::exp(-y) * std::sin(x)).scale(1.0).epsilon(1e-10));
    }
  }
}

#ifdef FRACPERIODIC_TOOL
TEST_CASE("installed executable maps exit codes") {
  const std::string tool = FRACPERIODIC_TOOL;
  const auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(tool + " --help") == 0);
  CHECK(status(tool + " eig --s 0.5 --T 6.2832 --count 4") == 0);
  CHECK(status(tool + " eig --s 1.5 --T 6.2832") == 2);
  const fs::path one = scratch("tool_one.json");
  write_file(one, io::to_json(PeriodicFunction::constant(2 * oracle::pi, 4, 1.0)));
  CHECK(status(tool + " solve-linear --s 0.5 --g " + one.string()) == 1);
}
#endif
