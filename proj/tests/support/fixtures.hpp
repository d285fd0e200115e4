#pragma once

#include <cstdint>
#include <vector>

#include "bbs/config.hpp"

namespace fixture {

// Strings of n balls (n = 1..N) at sites -(2n+1)(n-1) .. -2n(n-1), J = 1.
inline bbs::Config ball_strings(std::int64_t N) {
  const std::int64_t lo = -(2 * N + 1) * (N - 1);
  std::vector<std::int64_t> cells(static_cast<std::size_t>(1 - lo), 0);
  for (std::int64_t n = 1; n <= N; ++n) {
    for (std::int64_t s = -(2 * n + 1) * (n - 1); s <= -2 * n * (n - 1); ++s) {
      cells[static_cast<std::size_t>(s - lo)] = 1;
    }
  }
  return bbs::Config(lo, cells, bbs::Capacity::finite(1));
}

}  // namespace fixture
