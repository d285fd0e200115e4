#include "bbs/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "bbs/error.hpp"
#include "bbs/tagged.hpp"

namespace bbs {

void for_each_replica(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn) {
  const int workers = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, n)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<std::int64_t> draw(const Sampler& s, Stream& stream, std::int64_t n) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = s(stream);
  return out;
}

}  // namespace

SpaceTimeBlock sample_block_with(Capacity J, Capacity K, const Pmf& mu, const Pmf& nu, std::int64_t L,
                                 std::int64_t T_max, RngSpec rng) {
  if (L < 1 || T_max < 0) throw Error(ErrorCode::InvalidParams, "need L >= 1 and T_max >= 0");
  require_supported(mu, J, "mu");
  require_supported(nu, K, "nu");
  Stream window(rng, StreamRole::Window);
  Stream currents(rng, StreamRole::Currents);
  auto cells = draw(Sampler(mu), window, L);
  auto seeds = draw(Sampler(nu), currents, T_max);
  const Config c(1, std::move(cells), J, IidInvariant{std::move(seeds)});
  return evolve_block(J, K, c, T_max);
}

StationaryBlock sample_stationary_block(Capacity J, Capacity K, const Pmf& mu, std::int64_t L,
                                        std::int64_t T_max, RngSpec rng) {
  StationaryBlock out;
  const ClassifyResult cls = classify_invariant(J, K, mu);
  out.invariant = cls.verdict == Verdict::Invariant;
  if (!out.invariant) out.warning = "mu is not invariant: " + describe(cls);
  out.nu = dual_measure(J, K, mu);
  out.block = sample_block_with(J, K, mu, out.nu, L, T_max, rng);
  return out;
}

InvarianceReport invariance_mc_test(Capacity J, Capacity K, const Pmf& mu, std::int64_t L, std::int64_t T_max,
                                    std::int64_t replicas, std::uint64_t seed, double significance, int threads) {
  if (L < 2 || T_max < 1 || replicas < 1) throw Error(ErrorCode::InvalidParams, "need L >= 2, T_max >= 1, replicas >= 1");
  InvarianceReport rep;
  rep.L = L;
  rep.T_max = T_max;
  rep.replicas = replicas;
  rep.significance = significance;
  const ClassifyResult cls = classify_invariant(J, K, mu);
  if (cls.verdict != Verdict::Invariant) rep.warning = "mu is not invariant: " + describe(cls);
  const Pmf nu = dual_measure(J, K, mu);

  const auto states = static_cast<std::size_t>(mu.max_index() + 1);
  // counts[r][t]: marginal then pair histograms.
  struct Counts {
    std::vector<std::vector<double>> marginal;
    std::vector<std::vector<double>> pair;
  };
  std::vector<Counts> per(static_cast<std::size_t>(replicas));
  for_each_replica(replicas, threads, [&](std::int64_t r) {
    const SpaceTimeBlock b = sample_block_with(J, K, mu, nu, L, T_max, {seed, static_cast<std::uint64_t>(r)});
    Counts c;
    c.marginal.assign(b.occupancy.size(), std::vector<double>(states, 0.0));
    c.pair.assign(b.occupancy.size(), std::vector<double>(states * states, 0.0));
    for (std::size_t t = 0; t < b.occupancy.size(); ++t) {
      const auto& row = b.occupancy[t];
      for (auto v : row) {
        if (static_cast<std::size_t>(v) >= states) {
          c.marginal[t].resize(static_cast<std::size_t>(v) + 1, 0.0);
        }
        c.marginal[t][static_cast<std::size_t>(v)] += 1.0;
      }
      for (std::size_t i = 0; i + 1 < row.size(); i += 2) {
        const auto a = static_cast<std::size_t>(row[i]);
        const auto d = static_cast<std::size_t>(row[i + 1]);
        if (a < states && d < states) c.pair[t][a * states + d] += 1.0;
      }
    }
    per[static_cast<std::size_t>(r)] = std::move(c);
  });

  std::vector<double> probs(states);
  for (std::size_t a = 0; a < states; ++a) probs[a] = mu[static_cast<std::int64_t>(a)];
  std::vector<double> pair_probs(states * states);
  for (std::size_t a = 0; a < states; ++a) {
    for (std::size_t d = 0; d < states; ++d) pair_probs[a * states + d] = probs[a] * probs[d];
  }

  for (std::size_t t = 0; t <= static_cast<std::size_t>(T_max); ++t) {
    std::vector<double> marg(states, 0.0);
    std::vector<double> pair(states * states, 0.0);
    double extra = 0.0;
    for (const auto& c : per) {
      for (std::size_t a = 0; a < c.marginal[t].size(); ++a) {
        if (a < states) {
          marg[a] += c.marginal[t][a];
        } else {
          extra += c.marginal[t][a];
        }
      }
      for (std::size_t k = 0; k < pair.size(); ++k) pair[k] += c.pair[t][k];
    }
    const double n = std::accumulate(marg.begin(), marg.end(), extra);
    const double np = std::accumulate(pair.begin(), pair.end(), 0.0);
    RowStats rs;
    rs.t = static_cast<std::int64_t>(t);
    double tv = extra / n;
    for (std::size_t a = 0; a < states; ++a) tv += std::abs(marg[a] / n - probs[a]);
    rs.tv_marginal = 0.5 * tv;
    double tvp = 0.0;
    for (std::size_t k = 0; k < pair.size(); ++k) tvp += std::abs((np > 0 ? pair[k] / np : 0.0) - pair_probs[k]);
    rs.tv_pair = 0.5 * tvp;
    std::vector<double> marg_all = marg;
    std::vector<double> probs_all = probs;
    if (extra > 0.0) {
      marg_all.push_back(extra);
      probs_all.push_back(0.0);
    }
    rs.marginal = chi_square_test(marg_all, probs_all);
    rep.rows.push_back(rs);
    if (t == static_cast<std::size_t>(T_max)) {
      rep.marginal = rs.marginal;
      rep.pair = chi_square_test(pair, pair_probs);
    }
  }
  rep.p_value = rep.pair.p_value;
  rep.pass = rep.p_value >= significance;
  return rep;
}

CurrentIidReport current_iid_test(const SpaceTimeBlock& b, const Pmf& nu_expected, double significance,
                                  std::optional<std::int64_t> column) {
  CurrentIidReport rep;
  rep.column = column.value_or(b.offset + static_cast<std::int64_t>(b.width()) / 2);
  const auto col = current_column(b, rep.column);
  rep.T = static_cast<std::int64_t>(col.size());
  rep.significance = significance;
  std::int64_t top = nu_expected.max_index();
  for (auto v : col) top = std::max(top, v);
  std::vector<double> counts(static_cast<std::size_t>(top) + 1, 0.0);
  std::vector<double> probs(counts.size(), 0.0);
  for (auto v : col) counts[static_cast<std::size_t>(v)] += 1.0;
  for (std::int64_t a = 0; a <= top; ++a) probs[static_cast<std::size_t>(a)] = nu_expected[a];
  rep.marginal = chi_square_test(counts, probs);
  std::vector<double> xs(col.begin(), col.end());
  rep.lag1 = lag1_autocorrelation(xs);
  rep.lag1_bound = rep.T > 0 ? 3.0 / std::sqrt(static_cast<double>(rep.T)) : 0.0;
  rep.p_value = rep.marginal.p_value;
  rep.pass = rep.p_value >= significance && std::abs(rep.lag1) <= rep.lag1_bound;
  return rep;
}

SpeedEstimate speed_estimate(Capacity J, Capacity K, const Pmf& mu, std::int64_t t_max, std::int64_t replicas,
                             std::uint64_t seed, int threads) {
  if (J == K) throw Error(ErrorCode::PreconditionFailed, "speed is trivial for J=K (every ball moves one site)");
  if (mu[0] >= 1.0) throw Error(ErrorCode::PreconditionFailed, "mu is the empty configuration");
  if (t_max < 1 || replicas < 1) throw Error(ErrorCode::InvalidParams, "need t_max >= 1 and replicas >= 1");
  const ClassifyResult cls = classify_invariant(J, K, mu);
  if (cls.verdict != Verdict::Invariant) {
    throw Error(ErrorCode::PreconditionFailed, "speed needs an invariant mu: " + describe(cls));
  }
  const Pmf nu = dual_measure(J, K, mu);
  SpeedEstimate est;
  est.theoretical = mean(nu) / mean(mu);
  est.t_max = t_max;
  est.replicas = replicas;
  const double drift = std::ceil(est.theoretical);
  est.window = static_cast<std::int64_t>(std::ceil(1.5 * (1.0 + drift) * static_cast<double>(t_max))) + 16;
  est.per_replica.assign(static_cast<std::size_t>(replicas), 0.0);

  const Sampler sample_mu(mu);
  const Sampler sample_nu(nu);
  for_each_replica(replicas, threads, [&](std::int64_t r) {
    const RngSpec spec{seed, static_cast<std::uint64_t>(r)};
    std::int64_t L = est.window;
    for (std::uint64_t attempt = 0;; ++attempt) {
      Stream window(spec, StreamRole::Window, attempt);
      Stream currents(spec, StreamRole::Currents, attempt);
      auto cells = draw(sample_mu, window, L);
      const auto seeds = draw(sample_nu, currents, t_max);
      const TaggedState s = make_tagged_state(Config(1, std::move(cells), J));
      const auto traj = tagged_evolve(
          J, K, s, [&seeds](std::int64_t t) { return seeds[static_cast<std::size_t>(t)]; }, t_max);
      if (!traj.left_window) {
        est.per_replica[static_cast<std::size_t>(r)] =
            static_cast<double>(traj.positions.back()) / static_cast<double>(t_max);
        return;
      }
      if (attempt >= 3) {
        throw Error(ErrorCode::WindowExceeded, "tagged ball left a window of " + std::to_string(L) + " sites");
      }
      L *= 2;
    }
  });

  const double n = static_cast<double>(replicas);
  est.ratio_estimate = std::accumulate(est.per_replica.begin(), est.per_replica.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : est.per_replica) ss += (x - est.ratio_estimate) * (x - est.ratio_estimate);
  est.std_error = replicas > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return est;
}

}  // namespace bbs
