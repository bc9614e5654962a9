#include <benchmark/benchmark.h>

#include "fracperiodic/bifurcation.hpp"
#include "fracperiodic/diagnostics.hpp"
#include "fracperiodic/semilinear.hpp"

using namespace fracperiodic;

static void BM_MinimizeEnergy(benchmark::State& state) {
  const double T = static_cast<double>(state.range(0));
  const DoubleWell F = DoubleWell::quartic();
  for (auto _ : state) benchmark::DoNotOptimize(minimize_energy(T, FracOrder(0.5), F));
}
BENCHMARK(BM_MinimizeEnergy)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_NewtonRefine(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  const SemilinearSolution sol = minimize_energy(8.0, FracOrder(0.5), F);
  const PeriodicFunction start = sol.u + 0.01 * PeriodicFunction::mode(8.0, sol.u.order(), 3, 0.0, 1.0).as_odd();
  for (auto _ : state) benchmark::DoNotOptimize(newton_refine(start, FracOrder(0.5), F));
}
BENCHMARK(BM_NewtonRefine)->Unit(benchmark::kMillisecond);

static void BM_ContinueBranch(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(continue_branch(FracOrder(0.5), F, 1.0, static_cast<int>(state.range(0)), 0.05));
  }
}
BENCHMARK(BM_ContinueBranch)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_HamiltonianSamples(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  const SemilinearSolution sol = minimize_energy(8.0, FracOrder(0.3), F);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamiltonian_samples(sol.u, FracOrder(0.3), F, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_HamiltonianSamples)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_ModicaCheck(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  SolveConfig cfg;
  cfg.symmetry = Symmetry::even;
  const SemilinearSolution sol = minimize_energy(8.0, FracOrder(0.5), F, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(modica_check(sol.u, FracOrder(0.5), F));
}
BENCHMARK(BM_ModicaCheck)->Unit(benchmark::kMillisecond);

static void BM_EnergyScan(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_scan(FracOrder(0.25), F, {16.0, 32.0, 64.0, 128.0}, {}, jobs));
  }
}
BENCHMARK(BM_EnergyScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_TestFunctionBound(benchmark::State& state) {
  const DoubleWell F = DoubleWell::quartic();
  for (auto _ : state) benchmark::DoNotOptimize(test_function_bound(FracOrder(0.25), 32.0, 1.0, F));
}
BENCHMARK(BM_TestFunctionBound)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
