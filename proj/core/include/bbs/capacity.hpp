#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace bbs {

// Stand-in for an infinite capacity in the integer hot path. Loads are kept
// below kMaxLoad so that kUnbounded - load never wraps.
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kMaxLoad = std::int64_t{1} << 62;

class Capacity {
 public:
  constexpr Capacity() = default;

  static constexpr Capacity finite(std::int64_t v) { return Capacity(v); }
  static constexpr Capacity infinite() { return Capacity(kUnbounded); }

  constexpr bool is_infinite() const noexcept { return v_ == kUnbounded; }
  constexpr bool is_finite() const noexcept { return v_ != kUnbounded; }

  // Throws InvalidCapacity when infinite.
  std::int64_t value() const;

  // Finite value, or kUnbounded. Safe to feed to min/subtraction with loads.
  constexpr std::int64_t raw() const noexcept { return v_; }

  constexpr bool admits(std::int64_t x) const noexcept { return x >= 0 && x <= v_; }

  // Infinite - x = Infinite.
  constexpr std::int64_t minus(std::int64_t x) const noexcept {
    return is_infinite() ? kUnbounded : v_ - x;
  }

  friend constexpr bool operator==(Capacity, Capacity) = default;
  friend constexpr auto operator<=>(Capacity a, Capacity b) { return a.v_ <=> b.v_; }
  friend constexpr bool operator==(Capacity a, std::int64_t x) { return a.v_ == x; }
  friend constexpr auto operator<=>(Capacity a, std::int64_t x) { return a.v_ <=> x; }

 private:
  constexpr explicit Capacity(std::int64_t v) : v_(v) {}
  std::int64_t v_ = 1;
};

inline constexpr Capacity kInfinite = Capacity::infinite();

constexpr Capacity min(Capacity a, Capacity b) { return a < b ? a : b; }
constexpr Capacity max(Capacity a, Capacity b) { return a < b ? b : a; }

// Rejects capacity 0 and negative values.
Capacity system_capacity(std::int64_t v);
void require_system_capacity(Capacity c, const char* name);

Capacity parse_capacity(std::string_view text);
std::string to_string(Capacity c);

}  // namespace bbs
