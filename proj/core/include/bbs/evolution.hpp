#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/carrier.hpp"
#include "bbs/config.hpp"

namespace bbs {

// One time step. ZeroPad windows grow on the right until the carrier is
// empty, so finite configurations evolve exactly. Seeded and IidInvariant
// boundaries consume one seed; Detect shrinks to the trusted region.
Config step(Capacity J, Capacity K, const Config& c);

// R T R. Needs a ZeroPad or Detect boundary.
Config inverse_step(Capacity J, Capacity K, const Config& c);

// W_{offset-1} at time t.
using CurrentSupply = std::function<std::int64_t(std::int64_t t)>;

struct SpaceTimeBlock {
  Capacity J;
  Capacity K;
  std::int64_t offset = 0;
  std::vector<std::vector<std::int64_t>> occupancy;  // rows t = 0..T
  std::vector<std::vector<std::int64_t>> carrier;    // rows t = 0..T-1
  std::vector<std::int64_t> left_currents;           // W_{offset-1} at t = 0..T-1

  std::size_t width() const noexcept { return occupancy.empty() ? 0 : occupancy.front().size(); }
  std::size_t steps() const noexcept { return carrier.size(); }
  std::int64_t last() const noexcept { return offset + static_cast<std::int64_t>(width()) - 1; }

  Config row(std::size_t t) const;
  CarrierPath carrier_row(std::size_t t) const;
};

struct EvolveOptions {
  // Overrides the seeds implied by the boundary mode.
  CurrentSupply supply;
  // ZeroPad only: widen the window so no ball leaves on the right.
  bool extend_right = false;
};

SpaceTimeBlock evolve_block(Capacity J, Capacity K, const Config& c, std::int64_t T_max,
                            const EvolveOptions& options = {});

// ((T^t W)_n)_t for n in [offset - 1, last].
std::vector<std::int64_t> current_column(const SpaceTimeBlock& b, std::int64_t n);

struct DualityReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::int64_t intertwining_checked = 0;
  std::int64_t intertwining_mismatches = 0;

  bool ok() const noexcept { return violations == 0 && intertwining_mismatches == 0; }
};

// For every (n, t): F_{K,J}(W^t_n, eta^t_{n+1}) = (W^t_{n+1}, eta^{t+1}_{n+1}),
// plus the column shift identity D(T eta) = theta D(eta) by re-evolving row 1.
DualityReport duality_verify(const SpaceTimeBlock& b);

}  // namespace bbs
