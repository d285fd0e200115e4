#include "bbs/evolution.hpp"

#include <string>

#include "bbs/error.hpp"
#include "bbs/local_map.hpp"

namespace bbs {

namespace {

std::vector<std::int64_t> sweep_extending(Capacity J, Capacity K, std::span<const std::int64_t> cells,
                                          std::int64_t seed) {
  const LocalRule f(J, K);
  const bool checked = J.is_infinite() || K.is_infinite();
  std::vector<std::int64_t> out;
  out.reserve(cells.size() + 8);
  std::int64_t b = seed;
  for (auto a : cells) {
    if (checked && a > kMaxLoad - b) throw Error(ErrorCode::Overflow, "carrier load overflow");
    const CellPair p = f(a, b);
    out.push_back(p.a);
    b = p.b;
  }
  while (b > 0) {
    const CellPair p = f(0, b);
    out.push_back(p.a);
    b = p.b;
  }
  return out;
}

std::int64_t seed_of(const BoundaryMode& mode) {
  if (const auto* s = std::get_if<SeededCarrier>(&mode)) return s->left_seed;
  if (const auto* iid = std::get_if<IidInvariant>(&mode)) {
    if (iid->currents.empty()) {
      throw Error(ErrorCode::PreconditionFailed, "IidInvariant boundary ran out of currents");
    }
    return iid->currents.front();
  }
  return 0;
}

BoundaryMode advanced(const BoundaryMode& mode) {
  if (const auto* s = std::get_if<SeededCarrier>(&mode)) {
    if (s->per_step.empty()) return *s;
    SeededCarrier next{s->per_step.front(), {s->per_step.begin() + 1, s->per_step.end()}};
    return next;
  }
  if (const auto* iid = std::get_if<IidInvariant>(&mode)) {
    return IidInvariant{{iid->currents.begin() + 1, iid->currents.end()}};
  }
  return mode;
}

}  // namespace

Config step(Capacity J, Capacity K, const Config& c) {
  const BoundaryMode& mode = c.boundary();
  if (std::holds_alternative<ZeroPad>(mode)) {
    return Config(c.offset(), sweep_extending(J, K, c.cells(), 0), J, mode);
  }
  if (std::holds_alternative<Detect>(mode)) {
    const CarrierPath w = canonical_carrier(J, K, c);
    return sweep(J, K, c.cropped_from(w.offset), w.left_seed).next;
  }
  auto next = sweep(J, K, c, seed_of(mode)).next;
  return next.with_boundary(advanced(mode));
}

Config inverse_step(Capacity J, Capacity K, const Config& c) {
  const BoundaryMode& mode = c.boundary();
  if (!std::holds_alternative<ZeroPad>(mode) && !std::holds_alternative<Detect>(mode)) {
    throw Error(ErrorCode::PreconditionFailed, "inverse_step needs a ZeroPad or Detect boundary");
  }
  return reverse(step(J, K, reverse(c)));
}

Config SpaceTimeBlock::row(std::size_t t) const {
  return Config(offset, occupancy.at(t), J);
}

CarrierPath SpaceTimeBlock::carrier_row(std::size_t t) const {
  CarrierPath w;
  w.offset = offset;
  w.values = carrier.at(t);
  w.left_seed = left_currents.at(t);
  return w;
}

SpaceTimeBlock evolve_block(Capacity J, Capacity K, const Config& c, std::int64_t T_max,
                            const EvolveOptions& options) {
  if (T_max < 0) throw Error(ErrorCode::InvalidParams, "T_max must be nonnegative");
  const auto steps = static_cast<std::size_t>(T_max);
  SpaceTimeBlock b{J, K, c.offset(), {}, {}, {}};
  b.occupancy.reserve(steps + 1);
  b.carrier.reserve(steps);
  b.left_currents.reserve(steps);
  const BoundaryMode& mode = c.boundary();

  if (std::holds_alternative<Detect>(mode) && !options.supply) {
    // Each row is trusted right of its seed position; crop everything to the
    // final common window at the end.
    std::vector<Config> rows{c};
    std::vector<CarrierPath> carriers;
    for (std::size_t t = 0; t < steps; ++t) {
      carriers.push_back(canonical_carrier(J, K, rows.back()));
      const CarrierPath& w = carriers.back();
      rows.push_back(sweep(J, K, rows.back().cropped_from(w.offset), w.left_seed).next);
    }
    const std::int64_t start = rows.back().offset();
    b.offset = start;
    for (const auto& r : rows) {
      const auto cells = r.cells();
      b.occupancy.emplace_back(cells.begin() + (start - r.offset()), cells.end());
    }
    for (const auto& w : carriers) {
      b.carrier.emplace_back(w.values.begin() + (start - w.offset), w.values.end());
      b.left_currents.push_back(w.at(start - 1));
    }
    return b;
  }

  CurrentSupply supply = options.supply;
  if (!supply) {
    if (const auto* s = std::get_if<SeededCarrier>(&mode)) {
      const SeededCarrier seeds = *s;
      supply = [seeds](std::int64_t t) {
        if (t == 0 || seeds.per_step.empty()) return seeds.left_seed;
        const auto i = static_cast<std::size_t>(t - 1);
        return i < seeds.per_step.size() ? seeds.per_step[i] : seeds.per_step.back();
      };
    } else if (const auto* iid = std::get_if<IidInvariant>(&mode)) {
      if (iid->currents.size() < steps) {
        throw Error(ErrorCode::PreconditionFailed, "IidInvariant boundary needs " + std::to_string(steps) +
                                                       " currents, got " + std::to_string(iid->currents.size()));
      }
      const std::vector<std::int64_t> currents = iid->currents;
      supply = [currents](std::int64_t t) { return currents[static_cast<std::size_t>(t)]; };
    } else {
      supply = [](std::int64_t) { return std::int64_t{0}; };
    }
  }

  const bool grow = options.extend_right && std::holds_alternative<ZeroPad>(mode) && !options.supply;
  const LocalRule f(J, K);
  const bool checked = J.is_infinite() || K.is_infinite();
  b.occupancy.emplace_back(c.cells().begin(), c.cells().end());
  for (std::size_t t = 0; t < steps; ++t) {
    const std::int64_t seed = supply(static_cast<std::int64_t>(t));
    if (!K.admits(seed)) throw Error(ErrorCode::InvalidCell, "boundary current exceeds K");
    const auto& cur = b.occupancy.back();
    std::vector<std::int64_t> next(cur.size());
    std::vector<std::int64_t> load(cur.size());
    std::int64_t w = seed;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (checked && cur[i] > kMaxLoad - w) throw Error(ErrorCode::Overflow, "carrier load overflow");
      const CellPair p = f(cur[i], w);
      next[i] = p.a;
      load[i] = p.b;
      w = p.b;
    }
    if (grow) {
      while (w > 0) {
        const CellPair p = f(0, w);
        next.push_back(p.a);
        load.push_back(p.b);
        w = p.b;
      }
    }
    b.left_currents.push_back(seed);
    b.carrier.push_back(std::move(load));
    b.occupancy.push_back(std::move(next));
  }
  if (grow) {
    const std::size_t width = b.occupancy.back().size();
    for (auto& r : b.occupancy) r.resize(width, 0);
    for (auto& r : b.carrier) r.resize(width, 0);
  }
  return b;
}

std::vector<std::int64_t> current_column(const SpaceTimeBlock& b, std::int64_t n) {
  if (n == b.offset - 1) return b.left_currents;
  if (n < b.offset || n > b.last()) {
    throw Error(ErrorCode::OutOfWindow, "column " + std::to_string(n) + " outside block");
  }
  std::vector<std::int64_t> col;
  col.reserve(b.steps());
  const auto i = static_cast<std::size_t>(n - b.offset);
  for (const auto& row : b.carrier) col.push_back(row[i]);
  return col;
}

DualityReport duality_verify(const SpaceTimeBlock& b) {
  DualityReport rep;
  const std::size_t T = b.steps();
  const std::size_t width = b.width();
  const LocalRule dual(b.K, b.J);
  for (std::size_t t = 0; t < T; ++t) {
    const auto& eta = b.occupancy[t];
    const auto& next = b.occupancy[t + 1];
    const auto& w = b.carrier[t];
    if (eta.size() != width || next.size() != width || w.size() != width) {
      rep.violations += static_cast<std::int64_t>(width);
      continue;
    }
    for (std::size_t i = 0; i < width; ++i) {
      const std::int64_t w_left = i == 0 ? b.left_currents[t] : w[i - 1];
      ++rep.checked;
      const bool valid = b.K.admits(w_left) && b.J.admits(eta[i]);
      const CellPair p = valid ? dual(w_left, eta[i]) : CellPair{-1, -1};
      if (!valid || p.a != w[i] || p.b != next[i]) ++rep.violations;
    }
  }

  if (T >= 2 && width > 0) {
    // Evolving row 1 with the shifted currents must reproduce the shifted columns.
    std::vector<std::int64_t> shifted(b.left_currents.begin() + 1, b.left_currents.end());
    bool rows_valid = true;
    for (const auto& r : b.occupancy[1]) rows_valid = rows_valid && b.J.admits(r);
    for (auto c : shifted) rows_valid = rows_valid && b.K.admits(c);
    if (!rows_valid) {
      rep.intertwining_mismatches += 1;
      return rep;
    }
    EvolveOptions opt;
    opt.supply = [&shifted](std::int64_t t) { return shifted[static_cast<std::size_t>(t)]; };
    const SpaceTimeBlock again =
        evolve_block(b.J, b.K, Config(b.offset, b.occupancy[1], b.J), static_cast<std::int64_t>(T - 1), opt);
    for (std::size_t t = 0; t + 1 < T; ++t) {
      for (std::size_t i = 0; i < width; ++i) {
        ++rep.intertwining_checked;
        if (again.carrier[t][i] != b.carrier[t + 1][i]) ++rep.intertwining_mismatches;
      }
    }
  }
  return rep;
}

}  // namespace bbs
