#include <benchmark/benchmark.h>

#include <random>

#include "bbs/carrier.hpp"
#include "bbs/evolution.hpp"

namespace {

bbs::Config random_config(std::int64_t J, std::int64_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> draw(J, density);
  std::vector<std::int64_t> cells(static_cast<std::size_t>(n));
  for (auto& c : cells) c = draw(rng);
  return bbs::Config(1, std::move(cells), bbs::Capacity::finite(J));
}

void BM_Sweep(benchmark::State& state) {
  const auto c = random_config(2, state.range(0), 0.2, 1);
  const auto J = bbs::Capacity::finite(2);
  const auto K = bbs::Capacity::finite(5);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::sweep(J, K, c, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep)->Range(1 << 10, 1 << 18);

void BM_PitmanStep(benchmark::State& state) {
  const auto c = random_config(2, state.range(0), 0.2, 2);
  const auto J = bbs::Capacity::finite(2);
  const auto K = bbs::Capacity::finite(5);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::pitman_step(J, K, c, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PitmanStep)->Range(1 << 10, 1 << 18);

void BM_EvolveBlock(benchmark::State& state) {
  const auto c = random_config(1, 4096, 0.2, 3);
  const auto J = bbs::Capacity::finite(1);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::evolve_block(J, bbs::kInfinite, c, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4096);
}
BENCHMARK(BM_EvolveBlock)->Range(16, 512);

}  // namespace
