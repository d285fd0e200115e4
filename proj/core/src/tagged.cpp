#include "bbs/tagged.hpp"

#include <limits>
#include <string>

#include "bbs/error.hpp"
#include "bbs/local_map.hpp"

namespace bbs {

namespace {

// Flat labels: site i holds labels[start[i] .. start[i+1]).
struct Flat {
  std::vector<std::int64_t> labels;
  std::vector<std::size_t> start;
};

Flat flatten(const BallLabels& l) {
  Flat f;
  f.start.reserve(l.sites.size() + 1);
  f.start.push_back(0);
  for (const auto& s : l.sites) {
    f.labels.insert(f.labels.end(), s.begin(), s.end());
    f.start.push_back(f.labels.size());
  }
  return f;
}

BallLabels unflatten(std::int64_t offset, const Flat& f) {
  BallLabels l;
  l.offset = offset;
  l.sites.resize(f.start.size() - 1);
  for (std::size_t i = 0; i + 1 < f.start.size(); ++i) {
    l.sites[i].assign(f.labels.begin() + static_cast<std::ptrdiff_t>(f.start[i]),
                      f.labels.begin() + static_cast<std::ptrdiff_t>(f.start[i + 1]));
  }
  return l;
}

struct Engine {
  Capacity J;
  Capacity K;
  std::int64_t offset;
  std::vector<std::int64_t> cells;
  Flat cur;
  Flat next;
  std::deque<std::int64_t> queue;
  std::int64_t lowest;

  // Returns the site of `tracked` after the step, or nullopt if it left.
  std::optional<std::int64_t> advance(std::int64_t left_current, std::int64_t tracked) {
    if (!K.admits(left_current)) throw Error(ErrorCode::InvalidCell, "boundary current exceeds K");
    const LocalRule f(J, K);
    const bool checked = J.is_infinite() || K.is_infinite();
    queue.clear();
    for (std::int64_t k = left_current; k >= 1; --k) queue.push_back(lowest - k);
    lowest -= left_current;
    next.labels.clear();
    next.start.clear();
    next.start.push_back(0);
    std::optional<std::int64_t> where;
    std::int64_t w = left_current;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::int64_t a = cells[i];
      if (checked && a > kMaxLoad - w) throw Error(ErrorCode::Overflow, "carrier load overflow");
      const CellPair p = f(a, w);
      // Concatenate queue then box; the first p.a stay.
      std::int64_t stay = p.a;
      const std::size_t box_begin = cur.start[i];
      const std::size_t box_end = cur.start[i + 1];
      while (stay > 0 && !queue.empty()) {
        next.labels.push_back(queue.front());
        queue.pop_front();
        --stay;
      }
      std::size_t j = box_begin;
      for (; stay > 0; --stay, ++j) next.labels.push_back(cur.labels[j]);
      for (; j < box_end; ++j) queue.push_back(cur.labels[j]);
      const std::size_t here = next.start.back();
      for (std::size_t k = here; k < next.labels.size(); ++k) {
        if (next.labels[k] == tracked) where = offset + static_cast<std::int64_t>(i);
      }
      next.start.push_back(next.labels.size());
      cells[i] = p.a;
      w = p.b;
    }
    std::swap(cur, next);
    return where;
  }
};

Engine make_engine(Capacity J, Capacity K, const TaggedState& s) {
  Engine e{J, K, s.config.offset(), {s.config.cells().begin(), s.config.cells().end()},
           flatten(s.labels), {}, {}, s.lowest_label};
  if (static_cast<std::int64_t>(e.cur.labels.size()) != s.config.total() ||
      e.cur.start.size() != e.cells.size() + 1) {
    throw Error(ErrorCode::PreconditionFailed, "labels do not match occupancies");
  }
  return e;
}

TaggedState to_state(Engine& e) {
  return TaggedState{Config(e.offset, e.cells, e.J), unflatten(e.offset, e.cur), e.queue, e.lowest};
}

}  // namespace

TaggedState make_tagged_state(const Config& c) {
  return TaggedState{c, label_balls(c), {}, 1};
}

TaggedState tagged_step(Capacity J, Capacity K, const TaggedState& s, std::int64_t left_current) {
  Engine e = make_engine(J, K, s);
  e.advance(left_current, std::numeric_limits<std::int64_t>::min());
  return to_state(e);
}

std::optional<std::int64_t> default_tracked_ball(const TaggedState& s) {
  for (std::size_t i = 0; i < s.labels.sites.size(); ++i) {
    const std::int64_t n = s.labels.offset + static_cast<std::int64_t>(i);
    if (n >= 1 && !s.labels.sites[i].empty()) return s.labels.sites[i].front();
  }
  return std::nullopt;
}

TaggedTrajectory tagged_evolve(Capacity J, Capacity K, const TaggedState& s, const CurrentSupply& supply,
                               std::int64_t T_max, std::optional<std::int64_t> tracked) {
  if (!tracked) tracked = default_tracked_ball(s);
  if (!tracked) throw Error(ErrorCode::TrackedBallAbsent, "no ball at a site >= 1");
  std::optional<std::int64_t> where;
  for (std::size_t i = 0; i < s.labels.sites.size() && !where; ++i) {
    for (auto l : s.labels.sites[i]) {
      if (l == *tracked) where = s.labels.offset + static_cast<std::int64_t>(i);
    }
  }
  if (!where) throw Error(ErrorCode::TrackedBallAbsent, "ball " + std::to_string(*tracked) + " not in window");

  Engine e = make_engine(J, K, s);
  std::vector<std::int64_t> positions;
  positions.reserve(static_cast<std::size_t>(T_max) + 1);
  positions.push_back(*where);
  bool left = false;
  for (std::int64_t t = 0; t < T_max; ++t) {
    const std::int64_t current = supply ? supply(t) : 0;
    where = e.advance(current, *tracked);
    if (!where) {
      left = true;
      break;
    }
    positions.push_back(*where);
  }
  TaggedTrajectory out{*tracked, std::move(positions), left, to_state(e)};
  return out;
}

}  // namespace bbs
