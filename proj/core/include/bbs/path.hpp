#pragma once

#include <cstdint>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/config.hpp"

namespace bbs {

// The walk S with increments J - 2 eta_n, stored doubled: D_n = 2 S_n.
struct PathEncoding {
  std::int64_t offset = 0;
  std::vector<std::int64_t> D;  // D[i] = D_{offset + i}
  std::int64_t base = 0;        // D_{offset - 1}

  std::int64_t last() const noexcept { return offset + static_cast<std::int64_t>(D.size()) - 1; }
  // n in [offset - 1, last].
  std::int64_t at(std::int64_t n) const;
  // Doubled two-point average (D_{n-1} + D_n) / 2 = S_{n-1} + S_n, n in [offset, last].
  std::int64_t midpoint(std::int64_t n) const;
  // Same path shifted so that D_{offset-1} = new_base.
  PathEncoding reanchored(std::int64_t new_base) const;

  friend bool operator==(const PathEncoding&, const PathEncoding&) = default;
};

// Throws JInfinite.
PathEncoding path_encode(const Config& c);
// Throws InvalidIncrement.
Config path_decode(const PathEncoding& p, Capacity J);

}  // namespace bbs
