#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bbs/capacity.hpp"

namespace bbs {

// Carrier entering the window from the left is empty.
struct ZeroPad {
  friend bool operator==(const ZeroPad&, const ZeroPad&) = default;
};

// left_seed is W_{offset-1} for the current row; per_step, if non-empty,
// supplies the seeds of the following rows in order.
struct SeededCarrier {
  std::int64_t left_seed = 0;
  std::vector<std::int64_t> per_step;
  friend bool operator==(const SeededCarrier&, const SeededCarrier&) = default;
};

struct Detect {
  std::int64_t floor = 0;
  double burn_in_fraction = 0.25;
  friend bool operator==(const Detect&, const Detect&) = default;
};

// currents[t] is W_{offset-1} at time t.
struct IidInvariant {
  std::vector<std::int64_t> currents;
  friend bool operator==(const IidInvariant&, const IidInvariant&) = default;
};

using BoundaryMode = std::variant<ZeroPad, SeededCarrier, Detect, IidInvariant>;

std::string boundary_name(const BoundaryMode& mode);

class Config {
 public:
  Config(std::int64_t offset, std::vector<std::int64_t> cells, Capacity J,
         BoundaryMode boundary = ZeroPad{});

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t first() const noexcept { return offset_; }
  std::int64_t last() const noexcept { return offset_ + static_cast<std::int64_t>(cells_.size()) - 1; }
  std::size_t size() const noexcept { return cells_.size(); }
  Capacity J() const noexcept { return J_; }
  const BoundaryMode& boundary() const noexcept { return boundary_; }
  std::span<const std::int64_t> cells() const noexcept { return cells_; }

  bool contains(std::int64_t n) const noexcept { return n >= first() && n <= last(); }
  // Zero outside the window.
  std::int64_t at(std::int64_t n) const noexcept {
    return contains(n) ? cells_[static_cast<std::size_t>(n - offset_)] : 0;
  }
  std::int64_t total() const noexcept;

  Config with_boundary(BoundaryMode mode) const;
  // Keeps cells [from, last]; from must lie in the window.
  Config cropped_from(std::int64_t from) const;
  // Appends zeros on the right.
  Config padded_right(std::size_t extra) const;

  friend bool operator==(const Config& x, const Config& y) {
    return x.offset_ == y.offset_ && x.cells_ == y.cells_ && x.J_ == y.J_;
  }

 private:
  std::int64_t offset_;
  std::vector<std::int64_t> cells_;
  Capacity J_;
  BoundaryMode boundary_;
};

// Equal as configurations on Z with zeros outside the windows.
bool same_configuration(const Config& x, const Config& y);

// Text form `offset:v0,v1,...`.
Config parse_config(std::string_view text, Capacity J, BoundaryMode boundary = ZeroPad{});
std::string format_config(const Config& c);

// (R eta)_n = eta_{1-n}.
Config reverse(const Config& c);
// Left shift theta^k: offset decreases by k.
Config shift(const Config& c, std::int64_t k);

struct BallLabels {
  std::int64_t offset = 0;
  // sites[i] lists the labels at lattice index offset + i, bottom to top.
  std::vector<std::vector<std::int64_t>> sites;

  std::int64_t count() const noexcept;
  const std::vector<std::int64_t>& at(std::int64_t n) const;
  friend bool operator==(const BallLabels&, const BallLabels&) = default;
};

BallLabels label_balls(const Config& c, std::int64_t first_label = 1);

}  // namespace bbs
