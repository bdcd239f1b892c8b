#include <benchmark/benchmark.h>

#include "gtoda/parallel.hpp"
#include "gtoda/polymer.hpp"

namespace {

// one replica: log Z^N_1 on a fresh environment
double replica(std::size_t r, std::size_t n, std::size_t steps) {
  gtoda::RngStream rng(7, r);
  const gtoda::TimeGrid grid(1.0, steps);
  const auto env = gtoda::sample_brownian_path(n, gtoda::DriftVector::zero(n), grid, rng);
  return gtoda::log_partition(env, 1.0)(steps, n - 1);
}

void BM_serial(benchmark::State& state) {
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto v = gtoda::serial_map(reps, [](std::size_t r) { return replica(r, 3, 1000); });
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_parallel(benchmark::State& state) {
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto v = gtoda::parallel_map(reps, [](std::size_t r) { return replica(r, 3, 1000); });
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_serial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
