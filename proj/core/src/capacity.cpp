#include "bbs/capacity.hpp"

#include <charconv>

#include "bbs/error.hpp"

namespace bbs {

std::int64_t Capacity::value() const {
  if (is_infinite()) throw Error(ErrorCode::InvalidCapacity, "capacity is infinite");
  return v_;
}

Capacity system_capacity(std::int64_t v) {
  if (v < 1 || v >= kMaxLoad) {
    throw Error(ErrorCode::InvalidCapacity,
                "capacity must be a positive integer or inf, got " + std::to_string(v));
  }
  return Capacity::finite(v);
}

void require_system_capacity(Capacity c, const char* name) {
  if (c.is_finite() && (c.raw() < 1 || c.raw() >= kMaxLoad)) {
    throw Error(ErrorCode::InvalidCapacity,
                std::string(name) + " must be >= 1 or inf, got " + std::to_string(c.raw()));
  }
}

Capacity parse_capacity(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return kInfinite;
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "bad capacity '" + std::string(text) + "'");
  }
  return system_capacity(v);
}

std::string to_string(Capacity c) {
  return c.is_infinite() ? std::string("inf") : std::to_string(c.raw());
}

}  // namespace bbs
