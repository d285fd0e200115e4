#pragma once

#include <algorithm>
#include <cstdint>

#include "bbs/capacity.hpp"

namespace bbs {

// a: balls in the box, b: balls in the carrier.
struct CellPair {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const CellPair&, const CellPair&) = default;
};

enum class CaseTag { One, TwoA, TwoB, Three };

const char* to_string(CaseTag tag) noexcept;

// Throws InvalidCell unless 0 <= a <= J and 0 <= b <= K.
void validate_cell(Capacity J, Capacity K, CellPair p);

// F_{J,K}(a,b) = (a + min{b, J-a} - min{a, K-b}, b - min{b, J-a} + min{a, K-b}).
CellPair local_map(Capacity J, Capacity K, CellPair p);

CaseTag local_case(Capacity J, Capacity K, CellPair p);

// (J-a, K-b). Throws EitherCapacityInfinite.
CellPair sigma_dual(Capacity J, Capacity K, CellPair p);

// F_{J-2r,K-2r}(a-r, b-r). Throws RangeViolation unless min{J,K} > 2r and
// a in [r, J-r], b in [r, K-r].
CellPair reduced_map(Capacity J, Capacity K, std::int64_t r, CellPair p);

// Unchecked form for inner loops. Infinite capacities are stored as
// kUnbounded; callers keep a + b < kMaxLoad.
class LocalRule {
 public:
  constexpr LocalRule(Capacity J, Capacity K) noexcept : J_(J.raw()), K_(K.raw()) {}

  constexpr CellPair operator()(std::int64_t a, std::int64_t b) const noexcept {
    const std::int64_t drop = std::min(b, J_ - a);
    const std::int64_t pick = std::min(a, K_ - b);
    return {a + drop - pick, b - drop + pick};
  }

  // Second component only.
  constexpr std::int64_t load(std::int64_t a, std::int64_t b) const noexcept {
    return b - std::min(b, J_ - a) + std::min(a, K_ - b);
  }

 private:
  std::int64_t J_;
  std::int64_t K_;
};

}  // namespace bbs
