#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/evolution.hpp"
#include "bbs/measures.hpp"
#include "bbs/pmf.hpp"
#include "bbs/rng.hpp"
#include "bbs/stats.hpp"

namespace bbs {

struct StationaryBlock {
  SpaceTimeBlock block;
  Pmf nu;
  bool invariant = true;
  std::string warning;
};

// eta_1..eta_L iid mu and left currents iid nu = dual_measure(mu), evolved
// row by row with an IidInvariant boundary.
StationaryBlock sample_stationary_block(Capacity J, Capacity K, const Pmf& mu, std::int64_t L,
                                        std::int64_t T_max, RngSpec rng);
// Same, with the carrier law supplied and no invariance check.
SpaceTimeBlock sample_block_with(Capacity J, Capacity K, const Pmf& mu, const Pmf& nu, std::int64_t L,
                                 std::int64_t T_max, RngSpec rng);

struct RowStats {
  std::int64_t t = 0;
  double tv_marginal = 0.0;
  double tv_pair = 0.0;
  ChiSquare marginal;
};

struct InvarianceReport {
  std::int64_t L = 0;
  std::int64_t T_max = 0;
  std::int64_t replicas = 0;
  std::vector<RowStats> rows;
  // Final row, pooled over replicas.
  ChiSquare marginal;
  ChiSquare pair;  // non-overlapping adjacent pairs
  double p_value = 1.0;
  double significance = 0.01;
  bool pass = true;
  std::string warning;
};

InvarianceReport invariance_mc_test(Capacity J, Capacity K, const Pmf& mu, std::int64_t L, std::int64_t T_max,
                                    std::int64_t replicas, std::uint64_t seed, double significance = 0.01,
                                    int threads = 1);

struct CurrentIidReport {
  std::int64_t column = 0;
  std::int64_t T = 0;
  ChiSquare marginal;
  double lag1 = 0.0;
  double lag1_bound = 0.0;
  double p_value = 1.0;
  double significance = 0.01;
  bool pass = true;
};

// Default column: the middle of the window.
CurrentIidReport current_iid_test(const SpaceTimeBlock& b, const Pmf& nu_expected, double significance = 0.01,
                                  std::optional<std::int64_t> column = std::nullopt);

struct SpeedEstimate {
  double ratio_estimate = 0.0;
  double std_error = 0.0;
  double theoretical = 0.0;
  std::int64_t t_max = 0;
  std::int64_t replicas = 0;
  std::int64_t window = 0;
  std::vector<double> per_replica;
};

SpeedEstimate speed_estimate(Capacity J, Capacity K, const Pmf& mu, std::int64_t t_max, std::int64_t replicas,
                             std::uint64_t seed, int threads = 1);

// Runs fn(0..n-1) on up to `threads` workers; each index runs exactly once.
void for_each_replica(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn);

}  // namespace bbs
