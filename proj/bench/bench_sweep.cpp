// Serial reference kernels against the OpenMP kernels.
//   ./dynnim_bench --benchmark_filter=Sweep

#include <benchmark/benchmark.h>

#include "dynnim/oracle.hpp"
#include "dynnim/verify.hpp"

using namespace dynnim;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_SweepG2(benchmark::State& state) {
  const u64 w = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::sweep_g2(w, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>((w / 2 + 1) * (w / 2 + 1)));
  label(state);
}
BENCHMARK(BM_SweepG2)->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SweepG2Large(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::sweep_g2(state.range(0), Execution::parallel));
  state.SetLabel("parallel");
}
BENCHMARK(BM_SweepG2Large)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SweepG1(benchmark::State& state) {
  const auto f = BoundFn::affine(2, 1);
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::sweep_g1(f, x, 40, mode(state)));
  label(state);
}
BENCHMARK(BM_SweepG1)->ArgsProduct({{100, 200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_VerifyG1Canonical(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& f : canonical_bounds()) benchmark::DoNotOptimize(verify_g1(f, 200, 40, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_VerifyG1Canonical)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_VerifyG2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_g2(state.range(0), mode(state)));
  label(state);
}
BENCHMARK(BM_VerifyG2)->ArgsProduct({{512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_StrategyG2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_strategy_g2(state.range(0), mode(state)));
  label(state);
}
BENCHMARK(BM_StrategyG2)->ArgsProduct({{512}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
