#include <random>

#include <benchmark/benchmark.h>

#include "whfactor/kyp_krein.hpp"
#include "whfactor/random_systems.hpp"
#include "whfactor/toeplitz.hpp"
#include "whfactor/verification.hpp"

namespace {

using namespace whfactor;

// A realization with exactly `states` states and p = m = `size`.
StateSpaceSystem system_with(Index states, Index size) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * states + size));
  RandomSymbolOptions options;
  options.size = size;
  options.max_states = states;
  for (;;) {
    StateSpaceSystem sys = realize_rational(random_rational_symbol(rng, options));
    if (sys.states() == states) return sys;
  }
}

void BM_Factorize(benchmark::State& state) {
  const auto sys = system_with(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(factorize(sys, Side::kRight));
}
BENCHMARK(BM_Factorize)->Arg(4)->Arg(10)->Arg(20);

void BM_SolveKyp(benchmark::State& state) {
  const auto sys = system_with(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_kyp(sys));
}
BENCHMARK(BM_SolveKyp)->Arg(4)->Arg(10)->Arg(20);

void BM_ProjectionOrdered(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random_dichotomous_matrix(rng, state.range(0), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_projection_ordered(a));
}
BENCHMARK(BM_ProjectionOrdered)->Arg(10)->Arg(20)->Arg(40);

void BM_ProjectionRiesz(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random_dichotomous_matrix(rng, 20, 0.1);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_projection_riesz(a, order));
}
BENCHMARK(BM_ProjectionRiesz)->Arg(64)->Arg(256)->Arg(1024);

void BM_SupNorm(benchmark::State& state) {
  const auto sys = system_with(20, 4);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_on_circle(sys, grid));
}
BENCHMARK(BM_SupNorm)->Arg(256)->Arg(512);

void BM_ToeplitzSolve(benchmark::State& state) {
  const auto sys = system_with(10, 2);
  const auto wh = factorize(sys, Side::kRight);
  const Index n = state.range(0);
  const ComplexVector rhs = ComplexVector::Ones(n * 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_via_factorization(wh, rhs, n, 200));
}
BENCHMARK(BM_ToeplitzSolve)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
