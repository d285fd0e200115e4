#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/config.hpp"
#include "bbs/path.hpp"

namespace bbs {

struct CarrierPath {
  std::int64_t offset = 0;
  std::vector<std::int64_t> values;  // values[i] = W_{offset + i}
  std::int64_t left_seed = 0;        // W_{offset - 1}
  bool approximate = false;
  // Leading cells to discard when approximate.
  std::int64_t burn_in = 0;

  std::int64_t last() const noexcept { return offset + static_cast<std::int64_t>(values.size()) - 1; }
  // n in [offset - 1, last].
  std::int64_t at(std::int64_t n) const;
};

struct SweepResult {
  CarrierPath carrier;
  Config next;
};

// Left-to-right application of F_{J,K} from W_{offset-1} = seed.
SweepResult sweep(Capacity J, Capacity K, const Config& c, std::int64_t seed);

enum class SeedRule { ZeroRule, FullRule, FluctuationRule, RunningMax, Supplied };
const char* to_string(SeedRule rule) noexcept;

struct SeedReport {
  std::int64_t position = 0;
  std::int64_t forced_value = 0;
  SeedRule rule = SeedRule::Supplied;
};

std::optional<SeedReport> detect_seed(Capacity J, Capacity K, const Config& c, std::int64_t floor = 0);

// Doubled-unit recursion M2_n = min(max(M2_{n-1}, Dt_n), Dt_n + gap2), where
// gap2 = 2(K - J) and nullopt means K infinite. Returns M2 over the window.
std::vector<std::int64_t> pitman_M(const PathEncoding& p, std::optional<std::int64_t> gap2,
                                   std::int64_t left_init);

// M2_{offset-1} giving W_{offset-1} = seed.
std::int64_t pitman_left_init(Capacity J, const PathEncoding& p, std::int64_t seed);

// W_n = (M2_n - D_n + J) / 2. Throws ParityViolation.
CarrierPath carrier_from_pitman(Capacity J, const PathEncoding& p, const std::vector<std::int64_t>& M2,
                                std::int64_t left_init);

// T via TD = 2 M2 - D - 2 M2_{offset-1} on a fixed window. J < K only.
Config pitman_step(Capacity J, Capacity K, const Config& c, std::int64_t seed);

// Carrier for the boundary mode of c. Under Detect the path starts right
// after the detected seed position.
CarrierPath canonical_carrier(Capacity J, Capacity K, const Config& c);

// Largest N with min{J,K} <= eta_n + W_{n-1} <= max{J,K} for every n <= N in
// the carrier window; nullopt when it fails at the first cell.
std::optional<std::int64_t> essential_boundary(Capacity J, Capacity K, const Config& c,
                                               const CarrierPath& w);

// W_n = F2(eta_n, W_{n-1}) on every cell of w.
bool carrier_consistent(Capacity J, Capacity K, const Config& c, const CarrierPath& w);

}  // namespace bbs
