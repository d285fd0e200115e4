#include <doctest.h>

#include "bbs/carrier.hpp"
#include "bbs/error.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace bbs;

namespace {

std::vector<std::int64_t> v(std::initializer_list<std::int64_t> xs) { return xs; }
std::vector<std::int64_t> cells_of(const Config& c) { return {c.cells().begin(), c.cells().end()}; }
Capacity fin(std::int64_t x) { return Capacity::finite(x); }

}  // namespace

TEST_CASE("sweep examples") {
  auto r = sweep(fin(3), fin(4), Config(1, v({2, 1, 0}), fin(3)), 0);
  CHECK(r.carrier.values == v({2, 1, 0}));
  CHECK(cells_of(r.next) == v({0, 2, 1}));

  r = sweep(fin(1), kInfinite, Config(1, v({1, 1, 0, 0}), fin(1)), 0);
  CHECK(r.carrier.values == v({1, 2, 1, 0}));
  CHECK(cells_of(r.next) == v({0, 0, 1, 1}));

  r = sweep(fin(3), fin(3), Config(1, v({2, 0, 3, 1}), fin(3)), 2);
  CHECK(r.carrier.values == v({2, 0, 3, 1}));
  CHECK(cells_of(r.next) == v({2, 2, 0, 3}));

  CHECK_THROWS_AS(sweep(fin(3), fin(4), Config(1, v({0}), fin(3)), 5), Error);
}

TEST_CASE("sweep conservation and consistency") {
  gen::Gen g(5);
  for (int it = 0; it < 2000; ++it) {
    const Capacity J = g.coin(0.1) ? kInfinite : fin(g.uniform(1, 6));
    const Capacity K = g.coin(0.1) ? kInfinite : fin(g.uniform(1, 6));
    const Config c(g.uniform(-4, 4), g.cells(g.uniform(1, 20), J.is_finite() ? J.raw() : 9), J);
    const std::int64_t seed = g.uniform(0, K.is_finite() ? K.raw() : 9);
    const auto r = sweep(J, K, c, seed);
    REQUIRE(carrier_consistent(J, K, c, r.carrier));
    for (std::int64_t n = c.first(); n <= c.last(); ++n) {
      REQUIRE(c.at(n) + r.carrier.at(n - 1) == r.next.at(n) + r.carrier.at(n));
    }
    const auto ref = oracle::sweep_by_cases(J.is_finite() ? J.raw() : oracle::kInf,
                                            K.is_finite() ? K.raw() : oracle::kInf, cells_of(c), seed);
    REQUIRE(cells_of(r.next) == ref.first);
    REQUIRE(r.carrier.values == ref.second);
  }
}

TEST_CASE("sweep matches ball-by-ball moves for an infinite carrier") {
  gen::Gen g(17);
  for (int it = 0; it < 1000; ++it) {
    const std::int64_t J = g.uniform(1, 5);
    auto cells = g.cells(g.uniform(1, 12), J);
    std::int64_t total = 0;
    for (auto x : cells) total += x;
    cells.resize(cells.size() + static_cast<std::size_t>(total) + 1, 0);
    const auto moved = oracle::particle_move_infinite_carrier(J, cells);
    REQUIRE(!moved.empty());
    REQUIRE(cells_of(sweep(fin(J), kInfinite, Config(0, cells, fin(J)), 0).next) == moved);
  }
}

TEST_CASE("J > K: empty boxes empty the carrier, full boxes fill it") {
  gen::Gen g(23);
  for (int it = 0; it < 1000; ++it) {
    const std::int64_t K = g.uniform(1, 5);
    const std::int64_t J = g.uniform(K + 1, 8);
    const Config c(1, g.cells(g.uniform(1, 15), J), fin(J));
    const auto w = sweep(fin(J), fin(K), c, g.uniform(0, K)).carrier;
    for (std::int64_t n = c.first(); n <= c.last(); ++n) {
      if (c.at(n) == 0) REQUIRE(w.at(n) == 0);
      if (c.at(n) == J) REQUIRE(w.at(n) == K);
    }
  }
}

TEST_CASE("detect_seed examples") {
  auto s = detect_seed(fin(3), fin(2), Config(1, v({1, 0, 2}), fin(3)), 0);
  REQUIRE(s);
  CHECK(s->position == 2);
  CHECK(s->forced_value == 0);
  CHECK(s->rule == SeedRule::ZeroRule);

  s = detect_seed(fin(2), fin(4), Config(1, v({0, 0, 0}), fin(2)), 0);
  REQUIRE(s);
  CHECK(s->position == 2);
  CHECK(s->forced_value == 0);
  CHECK(s->rule == SeedRule::FluctuationRule);

  CHECK_FALSE(detect_seed(fin(1), kInfinite, Config(1, v({1, 0, 0, 0, 1}), fin(1)), 0));

  s = detect_seed(fin(3), fin(3), Config(4, v({2, 1}), fin(3)), 0);
  REQUIRE(s);
  CHECK(s->position == 4);
  CHECK(s->forced_value == 2);
  CHECK(s->rule == SeedRule::Supplied);

  s = detect_seed(fin(4), fin(3), Config(1, v({1, 1, 4}), fin(4)), 0);
  REQUIRE(s);
  CHECK(s->position == 3);
  CHECK(s->forced_value == 3);
  CHECK(s->rule == SeedRule::FullRule);

  CHECK_THROWS_AS(detect_seed(fin(4), fin(2), Config(1, v({1}), fin(4)), 1), Error);
  // Alternating J>K window without a forcing occupancy.
  CHECK_FALSE(detect_seed(fin(4), fin(3), Config(1, v({1, 2, 3, 2, 1}), fin(4)), 0));
}

TEST_CASE("property: forced seeds hold for every admissible carrier") {
  gen::Gen g(29);
  int fired = 0;
  for (int it = 0; it < 4000; ++it) {
    const std::int64_t J = g.uniform(1, 4);
    const std::int64_t K = g.uniform(1, 4);
    const std::int64_t r = (std::min(J, K) > 2 && g.coin()) ? 1 : 0;
    std::vector<std::int64_t> cells;
    const auto n = g.uniform(1, 12);
    for (std::int64_t i = 0; i < n; ++i) cells.push_back(g.uniform(r, J - r));
    const Config c(1, cells, fin(J));
    const auto s = detect_seed(fin(J), fin(K), c, r);
    if (!s) continue;
    ++fired;
    const auto i = static_cast<std::size_t>(s->position - c.first());
    const auto vals = oracle::carrier_values_at(J, K, cells, i, r, K - r);
    REQUIRE(vals.size() == 1);
    REQUIRE(vals.front() == s->forced_value);
  }
  CHECK(fired > 1000);
}

TEST_CASE("pitman_M examples") {
  const Config c(1, v({1, 1, 0, 0}), fin(1));
  const auto p = path_encode(c);
  const auto M = pitman_M(p, std::nullopt, -1);
  const auto w = carrier_from_pitman(fin(1), p, M, -1);
  CHECK(w.values == v({1, 2, 1, 0}));
  CHECK(w.left_seed == 0);
  CHECK(pitman_left_init(fin(1), p, 0) == -1);

  const auto flat = path_encode(Config(1, v({2, 2, 2, 2}), fin(4)));
  for (auto gap : {std::optional<std::int64_t>{}, std::optional<std::int64_t>{6}}) {
    const auto Mf = pitman_M(flat, gap, 0);
    for (auto m : Mf) CHECK(m == 0);
  }

  const auto zeros = path_encode(Config(1, v({0, 0, 0, 0, 0}), fin(2)));
  const auto Mz = pitman_M(zeros, 4, -1000);
  for (std::int64_t n = zeros.offset + 1; n <= zeros.last(); ++n) {
    CHECK(Mz[static_cast<std::size_t>(n - zeros.offset)] == zeros.midpoint(n));
  }
  CHECK_THROWS_AS(carrier_from_pitman(fin(1), p, M, 0), Error);
}

TEST_CASE("property: sweep and Pitman carriers agree from any seed") {
  gen::Gen g(31);
  for (int it = 0; it < 2000; ++it) {
    const std::int64_t J = g.uniform(1, 6);
    const Capacity K = g.coin(0.3) ? kInfinite : fin(g.uniform(J + 1, 10));
    const Config c(g.uniform(-5, 5), g.cells(g.uniform(1, 25), J), fin(J));
    const std::int64_t seed = g.uniform(0, K.is_finite() ? K.raw() : 8);
    const auto sw = sweep(fin(J), K, c, seed);
    const auto p = path_encode(c);
    const auto m0 = pitman_left_init(fin(J), p, seed);
    const auto M = pitman_M(p, K.is_finite() ? std::optional<std::int64_t>(2 * (K.raw() - J)) : std::nullopt, m0);
    REQUIRE(carrier_from_pitman(fin(J), p, M, m0).values == sw.carrier.values);
    REQUIRE(pitman_step(fin(J), K, c, seed) == sw.next);
  }
}

TEST_CASE("canonical_carrier by boundary mode") {
  const Config c(1, v({1, 0, 2}), fin(3), Detect{0});
  const auto w = canonical_carrier(fin(3), fin(2), c);
  CHECK(w.offset == 3);
  CHECK(w.left_seed == 0);
  CHECK(w.values == v({2}));

  const Config z(1, v({2, 1, 0}), fin(3));
  CHECK(canonical_carrier(fin(3), fin(4), z).values == v({2, 1, 0}));

  const Config iid(1, v({0, 1, 0}), fin(1), IidInvariant{{1}});
  const auto wi = canonical_carrier(fin(1), fin(2), iid);
  CHECK(wi.left_seed == 1);
  CHECK(wi.values == sweep(fin(1), fin(2), iid, 1).carrier.values);

  const Config seeded(1, v({0, 1, 0}), fin(1), SeededCarrier{2, {}});
  CHECK(canonical_carrier(fin(1), fin(2), seeded).left_seed == 2);

  const Config alt(1, v({1, 2, 3, 2, 1}), fin(4), Detect{0});
  CHECK_THROWS_AS(canonical_carrier(fin(4), fin(3), alt), Error);
  try {
    canonical_carrier(fin(4), fin(3), alt);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Undetermined);
    CHECK(std::string(e.what()).find("alternating") != std::string::npos);
  }

  std::vector<std::int64_t> cells(40, 0);
  for (std::size_t i = 0; i < cells.size(); i += 3) cells[i] = 1;
  const Config inf(1, cells, fin(1), Detect{0});
  const auto wa = canonical_carrier(fin(1), kInfinite, inf);
  CHECK(wa.approximate);
  CHECK(wa.offset == 2);
  CHECK(wa.left_seed == 1);
  CHECK(wa.burn_in == 9);
}

TEST_CASE("essential_boundary examples") {
  const Config c(1, v({1, 0, 2}), fin(3));
  const auto w = canonical_carrier(fin(3), fin(2), c);
  CHECK_FALSE(essential_boundary(fin(3), fin(2), c, w));

  const Config ones(1, v({1, 1, 1, 1, 1}), fin(2));
  const auto w1 = sweep(fin(2), fin(4), ones, 1).carrier;
  CHECK(w1.values == v({1, 1, 1, 1, 1}));
  CHECK(essential_boundary(fin(2), fin(4), ones, w1) == ones.last());

  const Config jk(1, v({2, 0, 2, 0}), fin(2));
  const auto wjk = sweep(fin(2), fin(2), jk, 0).carrier;
  CHECK(essential_boundary(fin(2), fin(2), jk, wjk) == jk.last());
  const Config jk2(1, v({2, 1, 1, 0}), fin(2));
  CHECK(essential_boundary(fin(2), fin(2), jk2, sweep(fin(2), fin(2), jk2, 0).carrier) == 1);
}
