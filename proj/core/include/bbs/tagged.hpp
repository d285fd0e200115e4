#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/config.hpp"
#include "bbs/evolution.hpp"

namespace bbs {

struct TaggedState {
  Config config;
  BallLabels labels;
  // Balls carried past the right edge by the most recent step, in order.
  std::deque<std::int64_t> carrier_queue;
  // Smallest label in use; balls entering from the left get labels below it.
  std::int64_t lowest_label = 1;
};

TaggedState make_tagged_state(const Config& c);

// Per site: the carrier queue followed by the box balls; the first (T eta)_n
// stay and the rest become the new carrier queue.
TaggedState tagged_step(Capacity J, Capacity K, const TaggedState& s, std::int64_t left_current);

struct TaggedTrajectory {
  std::int64_t ball = 0;
  // Site of the ball at t = 0..T; stops early if the ball leaves the window.
  std::vector<std::int64_t> positions;
  bool left_window = false;
  TaggedState final_state;
};

// Default tracked ball: the left-most ball at a site >= 1, lowest label first.
std::optional<std::int64_t> default_tracked_ball(const TaggedState& s);

TaggedTrajectory tagged_evolve(Capacity J, Capacity K, const TaggedState& s, const CurrentSupply& supply,
                               std::int64_t T_max, std::optional<std::int64_t> tracked = std::nullopt);

}  // namespace bbs
