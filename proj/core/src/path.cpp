#include "bbs/path.hpp"

#include <string>

#include "bbs/error.hpp"

namespace bbs {

std::int64_t PathEncoding::at(std::int64_t n) const {
  if (n == offset - 1) return base;
  if (n < offset || n > last()) {
    throw Error(ErrorCode::OutOfWindow, "path index " + std::to_string(n) + " outside window");
  }
  return D[static_cast<std::size_t>(n - offset)];
}

std::int64_t PathEncoding::midpoint(std::int64_t n) const {
  if (n < offset || n > last()) {
    throw Error(ErrorCode::OutOfWindow, "path index " + std::to_string(n) + " outside window");
  }
  return (at(n - 1) + at(n)) / 2;
}

PathEncoding PathEncoding::reanchored(std::int64_t new_base) const {
  PathEncoding out = *this;
  const std::int64_t delta = new_base - base;
  out.base = new_base;
  for (auto& d : out.D) d += delta;
  return out;
}

PathEncoding path_encode(const Config& c) {
  if (c.J().is_infinite()) throw Error(ErrorCode::JInfinite, "path encoding needs finite J");
  const std::int64_t J = c.J().raw();
  if (J > (std::int64_t{1} << 40)) throw Error(ErrorCode::Overflow, "J too large for path encoding");
  PathEncoding p;
  p.offset = c.offset();
  p.base = 0;
  p.D.reserve(c.size());
  std::int64_t d = 0;
  for (auto eta : c.cells()) {
    if (__builtin_add_overflow(d, 2 * (J - 2 * eta), &d)) {
      throw Error(ErrorCode::Overflow, "path encoding overflow");
    }
    p.D.push_back(d);
  }
  return p;
}

Config path_decode(const PathEncoding& p, Capacity J) {
  if (J.is_infinite()) throw Error(ErrorCode::JInfinite, "path decoding needs finite J");
  if (p.D.empty()) throw Error(ErrorCode::InvalidIncrement, "empty path");
  const std::int64_t j = J.raw();
  std::vector<std::int64_t> cells;
  cells.reserve(p.D.size());
  std::int64_t prev = p.base;
  for (std::size_t i = 0; i < p.D.size(); ++i) {
    const std::int64_t inc = p.D[i] - prev;
    const std::int64_t num = 2 * j - inc;
    if (num % 4 != 0 || num < 0 || num / 4 > j) {
      throw Error(ErrorCode::InvalidIncrement,
                  "increment " + std::to_string(inc) + " at site " +
                      std::to_string(p.offset + static_cast<std::int64_t>(i)) + " invalid for J=" +
                      std::to_string(j));
    }
    cells.push_back(num / 4);
    prev = p.D[i];
  }
  return Config(p.offset, std::move(cells), J);
}

}  // namespace bbs
