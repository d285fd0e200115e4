#include "bbs/config.hpp"

#include <charconv>
#include <numeric>

#include "bbs/error.hpp"

namespace bbs {

std::string boundary_name(const BoundaryMode& mode) {
  switch (mode.index()) {
    case 0: return "zero";
    case 1: return "seeded";
    case 2: return "detect";
    default: return "iid";
  }
}

Config::Config(std::int64_t offset, std::vector<std::int64_t> cells, Capacity J,
               BoundaryMode boundary)
    : offset_(offset), cells_(std::move(cells)), J_(J), boundary_(std::move(boundary)) {
  require_system_capacity(J_, "J");
  if (cells_.empty()) throw Error(ErrorCode::InvalidCell, "configuration window is empty");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!J_.admits(cells_[i]) || cells_[i] >= kMaxLoad) {
      throw Error(ErrorCode::InvalidCell, "cell " + std::to_string(offset_ + static_cast<std::int64_t>(i)) +
                                              " has occupancy " + std::to_string(cells_[i]) +
                                              " outside [0," + to_string(J_) + "]");
    }
  }
}

std::int64_t Config::total() const noexcept {
  return std::accumulate(cells_.begin(), cells_.end(), std::int64_t{0});
}

Config Config::with_boundary(BoundaryMode mode) const {
  Config out = *this;
  out.boundary_ = std::move(mode);
  return out;
}

Config Config::cropped_from(std::int64_t from) const {
  if (!contains(from)) {
    throw Error(ErrorCode::OutOfWindow, "crop start " + std::to_string(from) + " outside window");
  }
  std::vector<std::int64_t> rest(cells_.begin() + (from - offset_), cells_.end());
  return Config(from, std::move(rest), J_, boundary_);
}

Config Config::padded_right(std::size_t extra) const {
  Config out = *this;
  out.cells_.resize(cells_.size() + extra, 0);
  return out;
}

bool same_configuration(const Config& x, const Config& y) {
  const std::int64_t lo = std::min(x.first(), y.first());
  const std::int64_t hi = std::max(x.last(), y.last());
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (x.at(n) != y.at(n)) return false;
  }
  return true;
}

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Config parse_config(std::string_view text, Capacity J, BoundaryMode boundary) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "configuration must look like offset:v0,v1,...");
  }
  const std::int64_t offset = parse_int(text.substr(0, colon), "offset");
  std::vector<std::int64_t> cells;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item.find("inf") != std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "cell values must be finite");
    }
    const std::int64_t v = parse_int(item, "cell");
    if (v < 0) throw Error(ErrorCode::InvalidCell, "negative occupancy");
    cells.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return Config(offset, std::move(cells), J, std::move(boundary));
}

std::string format_config(const Config& c) {
  std::string out = std::to_string(c.offset()) + ":";
  bool first = true;
  for (auto v : c.cells()) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out;
}

Config reverse(const Config& c) {
  std::vector<std::int64_t> cells(c.cells().rbegin(), c.cells().rend());
  return Config(1 - c.last(), std::move(cells), c.J(), c.boundary());
}

Config shift(const Config& c, std::int64_t k) {
  std::vector<std::int64_t> cells(c.cells().begin(), c.cells().end());
  return Config(c.offset() - k, std::move(cells), c.J(), c.boundary());
}

std::int64_t BallLabels::count() const noexcept {
  std::int64_t n = 0;
  for (const auto& s : sites) n += static_cast<std::int64_t>(s.size());
  return n;
}

const std::vector<std::int64_t>& BallLabels::at(std::int64_t n) const {
  const std::int64_t i = n - offset;
  if (i < 0 || i >= static_cast<std::int64_t>(sites.size())) {
    throw Error(ErrorCode::OutOfWindow, "site " + std::to_string(n) + " outside labelled window");
  }
  return sites[static_cast<std::size_t>(i)];
}

BallLabels label_balls(const Config& c, std::int64_t first_label) {
  BallLabels out;
  out.offset = c.offset();
  out.sites.resize(c.size());
  std::int64_t next = first_label;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::int64_t k = 0; k < c.cells()[i]; ++k) out.sites[i].push_back(next++);
  }
  return out;
}

}  // namespace bbs
