#include <benchmark/benchmark.h>

#include <random>

#include "npsp/engine.hpp"
#include "npsp/oracle.hpp"
#include "npsp/runtime.hpp"

namespace {

using namespace npsp;

std::vector<DiagVec> bench_data(int n, std::size_t m) {
  std::mt19937_64 rng(9001);
  std::vector<DiagVec> data;
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> entries(m);
    for (auto& e : entries) e = rng() % (1u << 30);
    data.emplace_back(std::move(entries));
  }
  return data;
}

void BM_FullRecursive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::size_t m = static_cast<std::size_t>(state.range(1));
  const std::vector<DiagVec> data = bench_data(n, m);
  SimulationConfig cfg;
  cfg.rand.seed = 17;
  cfg.record_payloads = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(data, cfg));
  }
}
BENCHMARK(BM_FullRecursive)
    ->ArgsProduct({{2, 3, 4, 5}, {100, 1000}})
    ->Unit(benchmark::kMillisecond);

void BM_Shortcut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<DiagVec> data = bench_data(n, 1000);
  SimulationConfig cfg;
  cfg.rand.seed = 17;
  cfg.mode = ExecutionMode::SHORTCUT;
  cfg.record_payloads = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(data, cfg));
  }
}
BENCHMARK(BM_Shortcut)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_PlaintextOracle(benchmark::State& state) {
  const std::vector<DiagVec> data = bench_data(static_cast<int>(state.range(0)), 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::plaintext_scalar_product(data));
  }
}
BENCHMARK(BM_PlaintextOracle)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

}  // namespace
