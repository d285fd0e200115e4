#include <benchmark/benchmark.h>

#include "bbs/experiments.hpp"
#include "bbs/tagged.hpp"

namespace {

void BM_TaggedEvolve(benchmark::State& state) {
  const auto J = bbs::Capacity::finite(1);
  const auto mu = bbs::Pmf::bernoulli(0.25);
  const auto sb = bbs::sample_stationary_block(J, bbs::kInfinite, mu, 8192, 1, bbs::RngSpec{1, 0});
  const bbs::TaggedState s = bbs::make_tagged_state(sb.block.row(0));
  const std::int64_t steps = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bbs::tagged_evolve(J, bbs::kInfinite, s, {}, steps));
  }
  state.SetItemsProcessed(state.iterations() * steps * 8192);
}
BENCHMARK(BM_TaggedEvolve)->Range(16, 1024);

void BM_SpeedEstimate(benchmark::State& state) {
  const auto mu = bbs::Pmf::bernoulli(0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bbs::speed_estimate(bbs::Capacity::finite(1), bbs::kInfinite, mu, state.range(0), 4, 7));
  }
}
BENCHMARK(BM_SpeedEstimate)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace
