#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracperiodic/extension.hpp"
#include "fracperiodic/linear.hpp"
#include "fracperiodic/spectral.hpp"

using namespace fracperiodic;

namespace {

PeriodicFunction random_function(int order, double period = 2 * std::numbers::pi) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> c(order + 1), s(order + 1, 0.0);
  for (int m = 0; m <= order; ++m) {
    c[m] = U(rng) / (1 + m);
    if (m > 0) s[m] = U(rng) / m;
  }
  return PeriodicFunction(period, c, s);
}

}  // namespace

static void BM_FracLaplacian(benchmark::State& state) {
  const PeriodicFunction u = random_function(static_cast<int>(state.range(0)));
  const FracOrder s(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(frac_laplacian(u, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracLaplacian)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_SingularIntegralOracle(benchmark::State& state) {
  const PeriodicFunction u = random_function(static_cast<int>(state.range(0)));
  const FracOrder s(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(singular_integral_oracle(u, s, 0.7));
}
BENCHMARK(BM_SingularIntegralOracle)->Arg(4)->Arg(8)->Arg(32);

static void BM_GagliardoEnergy(benchmark::State& state) {
  const PeriodicFunction u = random_function(static_cast<int>(state.range(0)));
  const FracOrder s(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(gagliardo_energy(u, s));
}
BENCHMARK(BM_GagliardoEnergy)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExtendBessel(benchmark::State& state) {
  const PeriodicFunction u = random_function(static_cast<int>(state.range(0)));
  const FracOrder s(0.3);
  for (auto _ : state) {
    const ExtensionField U = extend_bessel(u, s);
    benchmark::DoNotOptimize(U(0.4, 0.5));
  }
}
BENCHMARK(BM_ExtendBessel)->Arg(8)->Arg(64);

static void BM_ExtendPoisson(benchmark::State& state) {
  const PeriodicFunction u = random_function(static_cast<int>(state.range(0)));
  const FracOrder s(0.3);
  for (auto _ : state) {
    const ExtensionField U = extend_poisson(u, s);
    benchmark::DoNotOptimize(U(0.4, 0.5));
  }
}
BENCHMARK(BM_ExtendPoisson)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_DirichletToNeumann(benchmark::State& state) {
  const PeriodicFunction u = random_function(8);
  const ExtensionField U = extend_bessel(u, FracOrder(0.3));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_to_neumann(U));
}
BENCHMARK(BM_DirichletToNeumann)->Unit(benchmark::kMillisecond);

static void BM_EigenvalueSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PeriodicFunction k = random_function(3);
  const GalerkinOperator op(FracOrder(0.5), 2 * std::numbers::pi, n, k);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalue_set(op, 8));
  state.SetComplexityN(n);
}
BENCHMARK(BM_EigenvalueSet)->RangeMultiplier(2)->Range(16, 256)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
