#include <benchmark/benchmark.h>

#include "bbs/measures.hpp"

namespace {

void BM_DualMeasureFinite(benchmark::State& state) {
  const auto J = bbs::Capacity::finite(state.range(0));
  const auto K = bbs::Capacity::finite(2 * state.range(0));
  const auto mu = bbs::stbgeo(J, 0.7, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::dual_measure(J, K, mu));
}
BENCHMARK(BM_DualMeasureFinite)->RangeMultiplier(2)->Range(2, 64);

void BM_DualMeasureInfinite(benchmark::State& state) {
  const auto J = bbs::Capacity::finite(1);
  const auto mu = bbs::Pmf::bernoulli(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::dual_measure(J, bbs::kInfinite, mu));
}
BENCHMARK(BM_DualMeasureInfinite)->Arg(10)->Arg(25)->Arg(45);

void BM_Classify(benchmark::State& state) {
  const auto J = bbs::Capacity::finite(6);
  const auto K = bbs::Capacity::finite(10);
  const auto mu = bbs::stbgeo(J, 0.6, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::classify_invariant(J, K, mu));
}
BENCHMARK(BM_Classify);

void BM_Oracle(benchmark::State& state) {
  const auto J = bbs::Capacity::finite(2);
  const auto K = bbs::Capacity::finite(4);
  const auto mu = bbs::stbgeo(J, 0.5, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bbs::invariance_oracle(J, K, mu, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Oracle)->DenseRange(1, 4);

}  // namespace
