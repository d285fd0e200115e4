#include "bbs/carrier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbs/error.hpp"
#include "bbs/local_map.hpp"

namespace bbs {

std::int64_t CarrierPath::at(std::int64_t n) const {
  if (n == offset - 1) return left_seed;
  if (n < offset || n > last()) {
    throw Error(ErrorCode::OutOfWindow, "carrier index " + std::to_string(n) + " outside window");
  }
  return values[static_cast<std::size_t>(n - offset)];
}

const char* to_string(SeedRule rule) noexcept {
  switch (rule) {
    case SeedRule::ZeroRule: return "ZeroRule";
    case SeedRule::FullRule: return "FullRule";
    case SeedRule::FluctuationRule: return "FluctuationRule";
    case SeedRule::RunningMax: return "RunningMax";
    case SeedRule::Supplied: return "Supplied";
  }
  return "?";
}

SweepResult sweep(Capacity J, Capacity K, const Config& c, std::int64_t seed) {
  if (!K.admits(seed) || seed >= kMaxLoad) {
    throw Error(ErrorCode::InvalidCell, "carrier seed " + std::to_string(seed) + " exceeds K=" + to_string(K));
  }
  const LocalRule f(J, K);
  const bool checked = J.is_infinite() || K.is_infinite();
  const auto cells = c.cells();
  CarrierPath w;
  w.offset = c.offset();
  w.left_seed = seed;
  w.values.resize(cells.size());
  std::vector<std::int64_t> next(cells.size());
  std::int64_t b = seed;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::int64_t a = cells[i];
    if (checked && a > kMaxLoad - b) throw Error(ErrorCode::Overflow, "carrier load overflow");
    const CellPair out = f(a, b);
    next[i] = out.a;
    w.values[i] = out.b;
    b = out.b;
  }
  return {std::move(w), Config(c.offset(), std::move(next), J, c.boundary())};
}

std::optional<SeedReport> detect_seed(Capacity J, Capacity K, const Config& c, std::int64_t floor) {
  if (floor < 0 || !(min(J, K) > 2 * floor)) {
    throw Error(ErrorCode::FloorTooLarge, "need min{J,K} > 2r, got r=" + std::to_string(floor) +
                                              " with J=" + to_string(J) + ", K=" + to_string(K));
  }
  const auto cells = c.cells();
  if (J == K) return SeedReport{c.first(), cells[0], SeedRule::Supplied};

  if (J > K) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::int64_t n = c.first() + static_cast<std::int64_t>(i);
      if (cells[i] == floor) return SeedReport{n, floor, SeedRule::ZeroRule};
      if (J.is_finite() && cells[i] == J.raw() - floor) {
        return SeedReport{n, K.raw() - floor, SeedRule::FullRule};
      }
    }
    return std::nullopt;
  }

  if (K.is_infinite()) return std::nullopt;

  // J < K < inf: F2(eta, .) is nondecreasing with unit steps, so the set of
  // admissible loads stays an integer interval.
  const LocalRule f(J, K);
  std::int64_t lo = floor;
  std::int64_t hi = K.raw() - floor;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    lo = f.load(cells[i], lo);
    hi = f.load(cells[i], hi);
    if (lo == hi) {
      return SeedReport{c.first() + static_cast<std::int64_t>(i), lo, SeedRule::FluctuationRule};
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> pitman_M(const PathEncoding& p, std::optional<std::int64_t> gap2,
                                   std::int64_t left_init) {
  std::vector<std::int64_t> M(p.D.size());
  std::int64_t m = left_init;
  std::int64_t prev = p.base;
  for (std::size_t i = 0; i < p.D.size(); ++i) {
    const std::int64_t mid = (prev + p.D[i]) / 2;
    m = std::max(m, mid);
    if (gap2) m = std::min(m, mid + *gap2);
    M[i] = m;
    prev = p.D[i];
  }
  return M;
}

std::int64_t pitman_left_init(Capacity J, const PathEncoding& p, std::int64_t seed) {
  return 2 * seed + p.base - J.value();
}

CarrierPath carrier_from_pitman(Capacity J, const PathEncoding& p, const std::vector<std::int64_t>& M2,
                                std::int64_t left_init) {
  const std::int64_t j = J.value();
  auto extract = [&](std::int64_t m, std::int64_t d, std::int64_t n) {
    const std::int64_t twice = m - d + j;
    if (twice % 2 != 0) {
      throw Error(ErrorCode::ParityViolation, "non-integral carrier at site " + std::to_string(n));
    }
    return twice / 2;
  };
  CarrierPath w;
  w.offset = p.offset;
  w.left_seed = extract(left_init, p.base, p.offset - 1);
  w.values.resize(M2.size());
  for (std::size_t i = 0; i < M2.size(); ++i) {
    w.values[i] = extract(M2[i], p.D[i], p.offset + static_cast<std::int64_t>(i));
  }
  return w;
}

namespace {

std::optional<std::int64_t> doubled_gap(Capacity J, Capacity K) {
  if (!(J < K)) throw Error(ErrorCode::PreconditionFailed, "Pitman form needs J < K");
  if (K.is_infinite()) return std::nullopt;
  return 2 * (K.raw() - J.raw());
}

}  // namespace

Config pitman_step(Capacity J, Capacity K, const Config& c, std::int64_t seed) {
  const auto gap = doubled_gap(J, K);
  if (!K.admits(seed)) throw Error(ErrorCode::InvalidCell, "carrier seed exceeds K");
  const PathEncoding p = path_encode(c);
  const std::int64_t m0 = pitman_left_init(J, p, seed);
  const auto M = pitman_M(p, gap, m0);
  PathEncoding t;
  t.offset = p.offset;
  t.base = 0;
  t.D.resize(M.size());
  for (std::size_t i = 0; i < M.size(); ++i) t.D[i] = 2 * M[i] - p.D[i] - 2 * m0;
  return path_decode(t, J).with_boundary(c.boundary());
}

CarrierPath canonical_carrier(Capacity J, Capacity K, const Config& c) {
  const BoundaryMode& mode = c.boundary();
  if (std::holds_alternative<ZeroPad>(mode)) return sweep(J, K, c, 0).carrier;
  if (const auto* s = std::get_if<SeededCarrier>(&mode)) return sweep(J, K, c, s->left_seed).carrier;
  if (const auto* iid = std::get_if<IidInvariant>(&mode)) {
    if (iid->currents.empty()) {
      throw Error(ErrorCode::PreconditionFailed, "IidInvariant boundary has no current left");
    }
    return sweep(J, K, c, iid->currents.front()).carrier;
  }
  const auto& d = std::get<Detect>(mode);
  if (const auto seed = detect_seed(J, K, c, d.floor)) {
    if (seed->position == c.last()) {
      throw Error(ErrorCode::Undetermined, std::string("carrier forced only at the last cell (") +
                                               to_string(seed->rule) + ")");
    }
    return sweep(J, K, c.cropped_from(seed->position + 1), seed->forced_value).carrier;
  }
  if (J < K && K.is_infinite()) {
    if (c.size() < 2) throw Error(ErrorCode::Undetermined, "window too short for running-max burn-in");
    // Running max of the two-point average started at the first cell: W_first = eta_first.
    auto w = sweep(J, K, c.cropped_from(c.first() + 1), c.cells()[0]).carrier;
    w.approximate = true;
    w.burn_in = static_cast<std::int64_t>(std::floor(d.burn_in_fraction * static_cast<double>(w.values.size())));
    return w;
  }
  throw Error(ErrorCode::Undetermined,
              "no forcing cell in window (J=" + to_string(J) + ", K=" + to_string(K) + ", r=" +
                  std::to_string(d.floor) +
                  "); the window is consistent with an alternating/degenerate tail, so the carrier "
                  "is not determined");
}

std::optional<std::int64_t> essential_boundary(Capacity J, Capacity K, const Config& c,
                                               const CarrierPath& w) {
  const Capacity lo = min(J, K);
  const Capacity hi = max(J, K);
  std::optional<std::int64_t> boundary;
  for (std::int64_t n = w.offset; n <= w.last(); ++n) {
    const std::int64_t s = c.at(n) + w.at(n - 1);
    if (!(lo <= s && hi >= s)) break;
    boundary = n;
  }
  return boundary;
}

bool carrier_consistent(Capacity J, Capacity K, const Config& c, const CarrierPath& w) {
  const LocalRule f(J, K);
  for (std::int64_t n = w.offset; n <= w.last(); ++n) {
    if (!c.contains(n) || !K.admits(w.at(n))) return false;
    if (f.load(c.at(n), w.at(n - 1)) != w.at(n)) return false;
  }
  return true;
}

}  // namespace bbs
