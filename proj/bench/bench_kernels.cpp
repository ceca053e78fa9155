// Serial reference versus OpenMP path for the hot kernels.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "duality/kernels.hpp"
#include "duality/oracle.hpp"
#include "duality/sweep.hpp"

namespace {

using duality::Execution;
using cplx = std::complex<double>;

std::vector<cplx> random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_InnerProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto a = random_vector(n), b = random_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(duality::kernels::inner_product(a, b, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_InnerProduct)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16, 1 << 20}});

void BM_TraceOutEnvironment(benchmark::State& state) {
  const auto env = static_cast<std::size_t>(state.range(1));
  const auto psi = random_vector(2 * env);
  for (auto _ : state) {
    benchmark::DoNotOptimize(duality::kernels::trace_out_environment(psi, env, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(env));
}
BENCHMARK(BM_TraceOutEnvironment)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16, 1 << 20}});

void BM_ReduceQuanton(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(1));
  const auto composite = duality::oracle::build_composite({{alpha, 0.0}, {alpha / 2, 0.3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(duality::oracle::reduce_quanton(composite, exec_of(state)));
  }
}
BENCHMARK(BM_ReduceQuanton)->ArgsProduct({{0, 1}, {2, 6, 10}});

void BM_SurfaceSweep(benchmark::State& state) {
  auto grid = duality::sweep::SweepGrid::defaults(duality::sweep::SweepMode::surface);
  for (auto _ : state) benchmark::DoNotOptimize(duality::sweep::run_sweep(grid, exec_of(state)));
}
BENCHMARK(BM_SurfaceSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  duality::oracle::VerificationOptions options;
  options.samples = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(duality::oracle::verify_identities(options, exec_of(state)));
  }
}
BENCHMARK(BM_Verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
