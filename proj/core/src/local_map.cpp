#include "bbs/local_map.hpp"

#include <string>

#include "bbs/error.hpp"

namespace bbs {

const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::One: return "One";
    case CaseTag::TwoA: return "TwoA";
    case CaseTag::TwoB: return "TwoB";
    case CaseTag::Three: return "Three";
  }
  return "?";
}

void validate_cell(Capacity J, Capacity K, CellPair p) {
  if (!J.admits(p.a) || !K.admits(p.b) || p.a >= kMaxLoad || p.b >= kMaxLoad) {
    throw Error(ErrorCode::InvalidCell,
                "cell (" + std::to_string(p.a) + "," + std::to_string(p.b) +
                    ") outside capacities (" + to_string(J) + "," + to_string(K) + ")");
  }
}

CellPair local_map(Capacity J, Capacity K, CellPair p) {
  validate_cell(J, K, p);
  if (p.a > kMaxLoad - p.b) throw Error(ErrorCode::Overflow, "cell load too large");
  return LocalRule(J, K)(p.a, p.b);
}

CaseTag local_case(Capacity J, Capacity K, CellPair p) {
  validate_cell(J, K, p);
  const std::int64_t s = p.a + p.b;
  const Capacity lo = min(J, K);
  if (s <= lo) return CaseTag::One;
  if (J <= s && s <= K) return CaseTag::TwoA;
  if (K <= s && s <= J) return CaseTag::TwoB;
  return CaseTag::Three;
}

CellPair sigma_dual(Capacity J, Capacity K, CellPair p) {
  if (J.is_infinite() || K.is_infinite()) {
    throw Error(ErrorCode::EitherCapacityInfinite, "sigma_dual needs finite J and K");
  }
  validate_cell(J, K, p);
  return {J.raw() - p.a, K.raw() - p.b};
}

CellPair reduced_map(Capacity J, Capacity K, std::int64_t r, CellPair p) {
  if (r < 0 || !(min(J, K) > 2 * r)) {
    throw Error(ErrorCode::RangeViolation,
                "reduction needs min{J,K} > 2r, r=" + std::to_string(r));
  }
  if (p.a < r || p.a > J.minus(r) || p.b < r || p.b > K.minus(r)) {
    throw Error(ErrorCode::RangeViolation, "cell outside [r, J-r] x [r, K-r]");
  }
  const Capacity Jr = J.is_infinite() ? kInfinite : Capacity::finite(J.raw() - 2 * r);
  const Capacity Kr = K.is_infinite() ? kInfinite : Capacity::finite(K.raw() - 2 * r);
  return local_map(Jr, Kr, {p.a - r, p.b - r});
}

}  // namespace bbs
