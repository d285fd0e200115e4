#include <doctest.h>

#include "bbs/error.hpp"
#include "bbs/local_map.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace bbs;

namespace {

Capacity cap(std::int64_t v) { return v >= oracle::kInf ? kInfinite : Capacity::finite(v); }

}  // namespace

TEST_CASE("local_map examples") {
  CHECK(local_map(cap(3), cap(4), {1, 2}) == CellPair{2, 1});
  CHECK(local_map(cap(5), cap(7), {4, 4}) == CellPair{2, 6});
  CHECK(local_map(cap(3), cap(4), {3, 2}) == CellPair{1, 4});
  for (std::int64_t a = 0; a <= 4; ++a) {
    for (std::int64_t b = 0; b <= 4; ++b) CHECK(local_map(cap(4), cap(4), {a, b}) == CellPair{b, a});
  }
}

TEST_CASE("local_map rejects cells outside capacities") {
  CHECK_THROWS_AS(local_map(cap(3), cap(4), {4, 0}), Error);
  CHECK_THROWS_AS(local_map(cap(3), cap(4), {0, 5}), Error);
  CHECK_THROWS_AS(local_map(cap(3), cap(4), {-1, 0}), Error);
  try {
    local_map(cap(3), cap(4), {4, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCell);
  }
}

TEST_CASE("local_case examples and tie rule") {
  CHECK(local_case(cap(3), cap(4), {1, 2}) == CaseTag::One);
  CHECK(local_case(cap(3), cap(4), {2, 2}) == CaseTag::TwoA);
  CHECK(local_case(cap(3), cap(4), {3, 2}) == CaseTag::Three);
  CHECK(local_case(cap(4), cap(3), {2, 2}) == CaseTag::TwoB);
  // a+b = min{J,K} = 3 fits One and TwoA; the lowest wins.
  CHECK(local_case(cap(3), cap(4), {2, 1}) == CaseTag::One);
  CHECK(local_case(cap(3), kInfinite, {3, 10}) == CaseTag::TwoA);
}

TEST_CASE("sigma_dual") {
  CHECK(sigma_dual(cap(3), cap(4), {1, 2}) == CellPair{2, 2});
  CHECK(sigma_dual(cap(3), cap(4), {0, 0}) == CellPair{3, 4});
  CHECK(sigma_dual(cap(5), cap(7), {4, 4}) == CellPair{1, 3});
  CHECK_THROWS_AS(sigma_dual(kInfinite, cap(2), {1, 1}), Error);
}

TEST_CASE("reduced_map") {
  CHECK(reduced_map(cap(5), cap(7), 1, {4, 4}) == CellPair{1, 5});
  CHECK(local_map(cap(5), cap(7), {4, 4}) == CellPair{2, 6});
  CHECK(reduced_map(cap(3), cap(4), 0, {1, 2}) == local_map(cap(3), cap(4), {1, 2}));
  CHECK(reduced_map(cap(4), cap(6), 1, {1, 1}) == CellPair{0, 0});
  CHECK_THROWS_AS(reduced_map(cap(4), cap(6), 2, {2, 2}), Error);
  CHECK_THROWS_AS(reduced_map(cap(5), cap(7), 1, {0, 3}), Error);
}

TEST_CASE("local_map agrees with the case table") {
  for (std::int64_t J = 1; J <= 6; ++J) {
    for (std::int64_t K = 1; K <= 6; ++K) {
      for (std::int64_t a = 0; a <= J; ++a) {
        for (std::int64_t b = 0; b <= K; ++b) {
          const auto ref = oracle::local_by_cases(J, K, a, b);
          CHECK(local_map(cap(J), cap(K), {a, b}) == CellPair{ref.a, ref.b});
        }
      }
    }
  }
}

TEST_CASE("property: involution, duality, conservation, sigma and reducibility on random inputs") {
  gen::Gen g(7);
  for (int it = 0; it < 5000; ++it) {
    const std::int64_t J = g.coin(0.15) ? oracle::kInf : g.uniform(1, 30);
    const std::int64_t K = g.coin(0.15) ? oracle::kInf : g.uniform(1, 30);
    const Capacity Jc = cap(J), Kc = cap(K);
    const std::int64_t a = g.uniform(0, std::min<std::int64_t>(J, 60));
    const std::int64_t b = g.uniform(0, std::min<std::int64_t>(K, 60));
    const CellPair p{a, b};
    const CellPair q = local_map(Jc, Kc, p);
    REQUIRE(local_map(Jc, Kc, q) == p);
    const CellPair d = local_map(Kc, Jc, {b, a});
    REQUIRE(CellPair{d.b, d.a} == q);
    REQUIRE(q.a + q.b == a + b);
    if (Jc.is_finite() && Kc.is_finite()) {
      REQUIRE(sigma_dual(Jc, Kc, q) == local_map(Jc, Kc, sigma_dual(Jc, Kc, p)));
    }
    const std::int64_t lo = std::min(J, K);
    for (std::int64_t r = 0; 2 * r < lo && r <= std::min(a, b); ++r) {
      if (a > Jc.minus(r) || b > Kc.minus(r)) continue;
      REQUIRE(reduced_map(Jc, Kc, r, p) == CellPair{q.a - r, q.b - r});
    }
  }
}

TEST_CASE("capacity conventions") {
  CHECK(kInfinite > Capacity::finite(1000000));
  CHECK(min(kInfinite, Capacity::finite(3)) == Capacity::finite(3));
  CHECK(kInfinite.minus(5) == kUnbounded);
  CHECK(parse_capacity("inf").is_infinite());
  CHECK(parse_capacity("7") == Capacity::finite(7));
  CHECK_THROWS_AS(parse_capacity("0"), Error);
  CHECK_THROWS_AS(parse_capacity("-2"), Error);
  CHECK_THROWS_AS(parse_capacity("x"), Error);
  CHECK(to_string(kInfinite) == "inf");
}

TEST_CASE("infinite capacities overflow is checked") {
  CHECK_THROWS_AS(local_map(kInfinite, kInfinite, {kMaxLoad - 1, kMaxLoad - 1}), Error);
}
