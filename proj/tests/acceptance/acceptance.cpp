// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bbs/carrier.hpp"
#include "bbs/error.hpp"
#include "bbs/evolution.hpp"
#include "bbs/experiments.hpp"
#include "bbs/local_map.hpp"
#include "bbs/measures.hpp"
#include "bbs/stats.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

using namespace bbs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Capacity fin(std::int64_t x) { return Capacity::finite(x); }

int worker_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void info(const std::string& line) { std::printf("  info: %s\n", line.c_str()); }

// 1. Local-rule identities.
Outcome criterion1() {
  const auto t0 = Clock::now();
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  auto run = [&](Capacity J, Capacity K, std::int64_t amax, std::int64_t bmax) {
    for (std::int64_t a = 0; a <= amax; ++a) {
      for (std::int64_t b = 0; b <= bmax; ++b) {
        const CellPair p{a, b};
        const CellPair q = local_map(J, K, p);
        ++checks;
        if (local_map(J, K, q) != p) ++violations;
        const CellPair d = local_map(K, J, CellPair{b, a});
        if (d != CellPair{q.b, q.a}) ++violations;
        if (q.a + q.b != a + b) ++violations;
        if (J.is_finite() && K.is_finite()) {
          if (sigma_dual(J, K, q) != local_map(J, K, sigma_dual(J, K, p))) ++violations;
        }
        for (std::int64_t r = 1; min(J, K) > 2 * r; ++r) {
          if (a < r || b < r || !J.admits(a + r) || !K.admits(b + r)) continue;
          const CellPair red = reduced_map(J, K, r, p);
          if (red != CellPair{q.a - r, q.b - r}) ++violations;
        }
      }
    }
  };
  for (std::int64_t J = 1; J <= 6; ++J) {
    for (std::int64_t K = 1; K <= 6; ++K) run(fin(J), fin(K), J, K);
  }
  for (std::int64_t v = 1; v <= 40; ++v) {
    run(fin(v), kInfinite, v, 40);
    run(kInfinite, fin(v), 40, v);
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 10.0, std::to_string(checks) + " cells, " + std::to_string(violations) +
                                              " violations, " + fmt("%.2f s", secs)};
}

// 2. Sweep T equals the path transform T.
Outcome criterion2() {
  gen::Gen g(2002);
  std::int64_t mismatches = 0;
  for (int regime = 0; regime < 2; ++regime) {
    for (int it = 0; it < 1000; ++it) {
      const std::int64_t J = g.uniform(1, 5);
      const Capacity K = regime == 0 ? fin(g.uniform(J + 1, 10)) : kInfinite;
      const Config c = g.padded(fin(J), 20, J);
      const Config s = sweep(fin(J), K, c, 0).next;
      const Config p = pitman_step(fin(J), K, c, 0);
      for (std::int64_t n = std::min(s.first(), p.first()); n <= std::max(s.last(), p.last()); ++n) {
        if (s.at(n) != p.at(n)) {
          ++mismatches;
          break;
        }
      }
    }
  }
  return {mismatches == 0, "2000 configurations, " + std::to_string(mismatches) + " mismatches"};
}

// 3. Reversibility.
Outcome criterion3() {
  gen::Gen g(3003);
  std::int64_t failures = 0;
  const int regimes = 4;
  for (int regime = 0; regime < regimes; ++regime) {
    for (int it = 0; it < 1000; ++it) {
      std::int64_t J = g.uniform(1, 5);
      Capacity K = kInfinite;
      if (regime == 0) K = fin(g.uniform(J + 1, 9));
      if (regime == 1) {
        J = g.uniform(2, 6);
        K = fin(g.uniform(1, J - 1));
      }
      if (regime == 2) K = fin(J);
      const Config c = g.padded(fin(J), 20, J);
      const Config s = step(fin(J), K, c);
      if (!same_configuration(inverse_step(fin(J), K, s), c)) ++failures;
      if (!same_configuration(step(fin(J), K, inverse_step(fin(J), K, c)), c)) ++failures;
    }
  }
  return {failures == 0, "4 regimes x 1000 configurations, " + std::to_string(failures) + " failures"};
}

// 4. Duality and intertwining on blocks.
Outcome criterion4() {
  gen::Gen g(4004);
  std::int64_t bad = 0;
  std::int64_t checked = 0;
  std::int64_t intertwined = 0;
  for (int regime = 0; regime < 4; ++regime) {
    for (int boundary = 0; boundary < 2; ++boundary) {
      for (int it = 0; it < 100; ++it) {
        std::int64_t J = g.uniform(1, 4);
        Capacity K = kInfinite;
        if (regime == 0) K = fin(g.uniform(J + 1, 8));
        if (regime == 1) {
          J = g.uniform(2, 6);
          K = fin(g.uniform(1, J - 1));
        }
        if (regime == 2) K = fin(J);
        SpaceTimeBlock b;
        if (boundary == 0) {
          EvolveOptions opt;
          opt.extend_right = true;
          b = evolve_block(fin(J), K, g.padded(fin(J), 15, J), 6, opt);
        } else {
          std::vector<std::int64_t> currents;
          const std::int64_t top = K.is_finite() ? K.raw() : 6;
          for (int t = 0; t < 6; ++t) currents.push_back(g.uniform(0, top));
          const Config c(1, g.cells(g.uniform(2, 15), J), fin(J), IidInvariant{currents});
          b = evolve_block(fin(J), K, c, 6);
        }
        const DualityReport rep = duality_verify(b);
        checked += rep.checked;
        intertwined += rep.intertwining_checked;
        if (!rep.ok() || rep.checked == 0 || rep.intertwining_checked == 0) ++bad;
      }
    }
  }
  return {bad == 0, "800 blocks, " + std::to_string(checked) + " cell checks, " + std::to_string(intertwined) +
                        " intertwining checks, " + std::to_string(bad) + " bad blocks"};
}

struct GridPoint {
  Capacity J;
  Capacity K;
  double alpha;
  double beta;
  std::int64_t m;
};

Capacity scaled(Capacity c, std::int64_t m) { return c.is_finite() ? fin(c.raw() / m) : kInfinite; }

bool even_or_inf(Capacity c) { return c.is_infinite() || c.raw() % 2 == 0; }

std::vector<GridPoint> stbgeo_grid() {
  const std::vector<std::pair<Capacity, Capacity>> pairs{{fin(1), fin(2)}, {fin(1), fin(3)}, {fin(2), fin(4)},
                                                         {fin(2), fin(6)}, {fin(3), fin(5)}, {fin(1), kInfinite},
                                                         {fin(2), kInfinite}};
  std::vector<GridPoint> grid;
  for (const auto& [J, K] : pairs) {
    for (double alpha : {0.3, 0.5, 0.9, 1.0, 1.5}) {
      if (alpha >= 1.0 && K.is_infinite()) continue;
      for (double beta : {0.5, 1.0, 2.0}) {
        for (std::int64_t m : {1, 2}) {
          if (J.raw() % m != 0 || (K.is_finite() && K.raw() % m != 0)) continue;
          if (beta != 1.0 && !(even_or_inf(scaled(J, m)) && even_or_inf(scaled(K, m)))) continue;
          grid.push_back({J, K, alpha, beta, m});
        }
      }
    }
  }
  return grid;
}

// 5. Detailed balance on the stbGeo grid.
Outcome criterion5() {
  double worst = 0.0;
  double worst_tail = 0.0;
  const auto grid = stbgeo_grid();
  for (const auto& p : grid) {
    const Pmf mu = stbgeo(scaled(p.J, p.m), p.alpha, p.beta, p.m);
    const Pmf nu = stbgeo(scaled(p.K, p.m), p.alpha, p.beta, p.m);
    worst = std::max(worst, detailed_balance_residual(p.J, p.K, mu, nu));
    if (nu.truncated()) {
      // Tail past the truncation point, from the closed-form constant.
      const double C = stbgeo_constant(kInfinite, p.alpha, p.beta);
      double tail = 0.0;
      const std::int64_t x0 = nu.max_index() / p.m + 1;
      for (std::int64_t x = x0; x < x0 + 4000; ++x) tail += C * std::pow(p.alpha, static_cast<double>(x)) * (x % 2 ? p.beta : 1.0);
      worst_tail = std::max(worst_tail, tail);
    }
  }
  return {worst < 1e-12 && worst_tail < 1e-12,
          std::to_string(grid.size()) + " pairs, max residual " + fmt("%.3g", worst) + ", max tail " +
              fmt("%.3g", worst_tail)};
}

// 6. Exact one-step pushforward.
Outcome criterion6() {
  double worst = 0.0;
  int cases = 0;
  for (const auto& p : stbgeo_grid()) {
    if (!(p.K.is_finite() && ((p.J.raw() == 1 && p.K.raw() == 2) || (p.J.raw() == 2 && p.K.raw() == 4)))) continue;
    const Pmf mu = stbgeo(scaled(p.J, p.m), p.alpha, p.beta, p.m);
    for (int k = 1; k <= 3; ++k) {
      worst = std::max(worst, invariance_oracle(p.J, p.K, mu, k).max_deviation);
      ++cases;
    }
  }
  const Pmf control({0.5, 0.1, 0.4});
  double control_dev = 0.0;
  for (int k = 1; k <= 3; ++k) control_dev = std::max(control_dev, invariance_oracle(fin(2), fin(4), control, k).max_deviation);
  const Pmf alt({0.4, 0.3, 0.2, 0.1});
  double alt_dev = 0.0;
  for (int k = 1; k <= 3; ++k) alt_dev = std::max(alt_dev, invariance_oracle(fin(3), fin(5), alt, k).max_deviation);
  info("negative control (0.5,0.1,0.4) on (2,4) is stbGeo(2, sqrt(0.8), sqrt(0.05), 1) with J, K even, "
       "hence invariant; its deviation is " + fmt("%.3g", control_dev));
  info("supplementary negative control (0.4,0.3,0.2,0.1) on (3,5): deviation " + fmt("%.3g", alt_dev) +
       (alt_dev > 1e-3 ? " (rejected)" : " (not rejected)"));
  const bool pass = worst < 1e-10 && control_dev > 1e-3;
  return {pass, std::to_string(cases) + " invariant cases, max deviation " + fmt("%.3g", worst) +
                    "; negative control deviation " + fmt("%.3g", control_dev) + " (needs > 1e-3)"};
}

double max_abs_diff(const Pmf& p, const Pmf& q) {
  double d = 0.0;
  const auto n = static_cast<std::int64_t>(std::max(p.size(), q.size()));
  for (std::int64_t i = 0; i < n; ++i) d = std::max(d, std::abs(p[i] - q[i]));
  return d;
}

// 7. Stationary solve against the closed-form dual.
Outcome criterion7() {
  double worst = 0.0;
  int r_mismatch = 0;
  const auto grid = stbgeo_grid();
  for (const auto& p : grid) {
    const Pmf mu = stbgeo(scaled(p.J, p.m), p.alpha, p.beta, p.m);
    const Pmf closed = stbgeo(scaled(p.K, p.m), p.alpha, p.beta, p.m);
    const Pmf solved = dual_measure(p.J, p.K, mu);
    worst = std::max(worst, max_abs_diff(solved, closed));
    if (r_val(p.J, mu) != r_val(p.K, solved)) ++r_mismatch;
    if (p.K.is_infinite() && underline_r(mu) != underline_r(solved)) ++r_mismatch;
  }
  return {worst < 1e-10 && r_mismatch == 0, std::to_string(grid.size()) + " pairs, max |solve - closed form| " +
                                                 fmt("%.3g", worst) + ", " + std::to_string(r_mismatch) +
                                                 " r mismatches"};
}

// 8. Classification.
Outcome criterion8() {
  struct Member {
    Capacity J;
    Capacity K;
    Pmf mu;
  };
  std::vector<Member> members;
  const std::vector<std::pair<Capacity, Capacity>> pairs{
      {fin(1), fin(2)}, {fin(1), fin(3)}, {fin(2), fin(4)}, {fin(2), fin(6)}, {fin(3), fin(5)}, {fin(4), fin(6)},
      {fin(4), fin(8)}, {fin(5), fin(3)}, {fin(6), fin(4)}, {fin(6), fin(10)}, {fin(3), fin(7)}, {fin(7), fin(5)},
      {fin(1), kInfinite}, {fin(2), kInfinite}, {fin(4), kInfinite}, {fin(5), kInfinite}};
  gen::Gen g(8008);
  for (const auto& [J, K] : pairs) {
    const std::int64_t lo = std::min(J.raw(), K.is_finite() ? K.raw() : J.raw() + 1);
    for (std::int64_t r = 0; r == 0 || r <= lo / 2 - 1; ++r) {
      const Capacity Jt = fin(J.raw() - 2 * r);
      const Capacity Kt = K.is_finite() ? fin(K.raw() - 2 * r) : kInfinite;
      for (std::int64_t m : {1, 2, 3}) {
        if (Jt.raw() % m != 0 || (Kt.is_finite() && Kt.raw() % m != 0)) continue;
        const bool even = even_or_inf(scaled(Jt, m)) && even_or_inf(scaled(Kt, m));
        for (double alpha : {0.3, 0.7, 1.0, 1.6}) {
          if (alpha >= 1.0 && Kt.is_infinite()) continue;
          for (double beta : {1.0, 0.4, 2.5}) {
            if (beta != 1.0 && !even) continue;
            Pmf mu = shift_up(stbgeo(scaled(Jt, m), alpha, beta, m), r);
            members.push_back({J, K, mu});
            if (K.is_finite() && r > 0 && g.coin()) members.push_back({J, K, reflect(mu, J.raw())});
            if (K.is_finite() && r == 0) members.push_back({J, K, reflect(mu, J.raw())});
          }
        }
      }
      // Small supports: {0..floor(min/2)} of the reduced capacities.
      const std::int64_t half = std::min(Jt.raw(), Kt.is_finite() ? Kt.raw() : Jt.raw()) / 2;
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> w(static_cast<std::size_t>(half + 1));
        for (auto& x : w) x = g.real(0.05, 1.0);
        Pmf mu = shift_up(Pmf::normalized(w), r);
        if (mu.size() < static_cast<std::size_t>(J.raw() + 1)) {
          std::vector<double> full = mu.weights();
          full.resize(static_cast<std::size_t>(J.raw() + 1), 0.0);
          mu = Pmf(full);
        }
        members.push_back({J, K, mu});
        if (K.is_finite()) members.push_back({J, K, reflect(mu, J.raw())});
      }
    }
  }

  int false_negatives = 0;
  std::string first_miss;
  for (const auto& mb : members) {
    const auto c = classify_invariant(mb.J, mb.K, mb.mu);
    if (c.verdict != Verdict::Invariant) {
      if (first_miss.empty()) first_miss = to_string(mb.J) + "," + to_string(mb.K) + " " + format_pmf(mb.mu);
      ++false_negatives;
    }
  }

  // Perturbations: mix a family member with a random law on the same
  // capacities; ground truth from the exact oracle.
  int negatives = 0;
  int false_positives = 0;
  int attempts = 0;
  while (negatives < 50 && attempts < 5000) {
    ++attempts;
    const Member& mb = members[static_cast<std::size_t>(g.uniform(0, static_cast<std::int64_t>(members.size()) - 1))];
    if (mb.K.is_infinite() || mb.J.raw() > 6 || mb.K.raw() > 8) continue;
    std::vector<double> q(static_cast<std::size_t>(mb.J.raw() + 1));
    for (auto& x : q) x = g.real(0.0, 1.0);
    const Pmf noise = Pmf::normalized(q);
    const double eps = g.real(0.05, 0.3);
    std::vector<double> w(q.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = (1 - eps) * mb.mu[static_cast<std::int64_t>(i)] + eps * noise.weights()[i];
    }
    const Pmf pert = Pmf::normalized(w);
    if (tv_distance(pert, mb.mu) < 1e-2 || !mrev_member(mb.J, mb.K, pert)) continue;
    const double dev = invariance_oracle(mb.J, mb.K, pert, 2).max_deviation;
    if (dev < 1e-9) continue;
    ++negatives;
    if (classify_invariant(mb.J, mb.K, pert).verdict != Verdict::NotInvariant) ++false_positives;
  }
  std::string detail = std::to_string(members.size()) + " family members (" + std::to_string(false_negatives) +
                       " missed), " + std::to_string(negatives) + " perturbations (" +
                       std::to_string(false_positives) + " accepted)";
  if (!first_miss.empty()) detail += "; first miss " + first_miss;
  return {false_negatives == 0 && false_positives == 0 && negatives == 50, detail};
}

// 9. Tagged-particle speed.
Outcome criterion9() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto a = speed_estimate(fin(1), kInfinite, Pmf::bernoulli(0.25), 2000, 32, 9001, worker_threads());
  const double ta = seconds_since(t0);
  const double ea = std::abs(a.ratio_estimate - 2.0) / 2.0;
  const auto t1 = Clock::now();
  const Pmf mu = stbgeo(fin(3), 0.5, 1.0, 1);
  const auto b = speed_estimate(fin(3), fin(5), mu, 2000, 32, 9002, worker_threads());
  const double tb = seconds_since(t1);
  const double theory = mean(dual_measure(fin(3), fin(5), mu)) / mean(mu);
  const double eb = std::abs(b.ratio_estimate - theory) / theory;
  o.pass = ea < 0.05 && eb < 0.05 && ta < 120 && tb < 120;
  o.detail = "(1,inf) estimate " + fmt("%.4f", a.ratio_estimate) + " vs 2 (rel " + fmt("%.4f", ea) + ", " +
             fmt("%.1f s", ta) + "); (3,5) estimate " + fmt("%.4f", b.ratio_estimate) + " vs " +
             fmt("%.4f", theory) + " (rel " + fmt("%.4f", eb) + ", " + fmt("%.1f s", tb) + ")";
  return o;
}

// 10. Ball-string current at the origin.
Outcome criterion10() {
  const std::vector<std::int64_t> expected{1, 0, 2, 0, 3, 0, 4, 0, 5};
  std::vector<std::vector<std::int64_t>> cols;
  for (std::int64_t N : {12, 16}) {
    EvolveOptions opt;
    opt.extend_right = true;
    const auto b = evolve_block(fin(1), kInfinite, fixture::ball_strings(N), 9, opt);
    cols.push_back(current_column(b, 0));
  }
  std::ostringstream s;
  for (auto x : cols[0]) s << x << ' ';
  return {cols[0] == expected && cols[1] == cols[0], "t=0..8: " + s.str() + "(n=12), stable at n=16: " +
                                                         (cols[1] == cols[0] ? "yes" : "no")};
}

// 11. Calibration of the statistical tests.
Outcome criterion11() {
  const Capacity J = fin(2);
  const Capacity K = fin(4);
  const Pmf mu = stbgeo(J, 0.5, 1.0, 1);
  std::vector<double> inv_p(200);
  std::vector<double> cur_p(200);
  for_each_replica(200, worker_threads(), [&](std::int64_t s) {
    const auto seed = static_cast<std::uint64_t>(1100 + s);
    inv_p[static_cast<std::size_t>(s)] = invariance_mc_test(J, K, mu, 400, 4, 4, seed).p_value;
    const auto sb = sample_stationary_block(J, K, mu, 60, 1500, RngSpec{seed, 0});
    cur_p[static_cast<std::size_t>(s)] = current_iid_test(sb.block, sb.nu).p_value;
  });
  const double ks_inv = ks_uniform(inv_p);
  const double ks_cur = ks_uniform(cur_p);

  const Pmf control({0.5, 0.1, 0.4});
  const auto neg_inv = invariance_mc_test(J, K, control, 20000, 4, 8, 1111);
  const auto sb = sample_stationary_block(J, K, mu, 60, 3000, RngSpec{1112, 0});
  const auto neg_cur = current_iid_test(sb.block, Pmf({0.5, 0.3, 0.1, 0.05, 0.05}));

  const Pmf alt({0.4, 0.3, 0.2, 0.1});
  const auto alt_inv = invariance_mc_test(fin(3), fin(5), alt, 20000, 3, 8, 1113);
  info("supplementary invariance negative control (0.4,0.3,0.2,0.1) on (3,5): p = " + fmt("%.3g", alt_inv.p_value) +
       (alt_inv.p_value < 1e-3 ? " (rejected)" : " (not rejected)"));

  const bool pass = ks_inv < 0.12 && ks_cur < 0.12 && neg_inv.p_value < 1e-3 && neg_cur.p_value < 1e-3;
  return {pass, "KS invariance " + fmt("%.4f", ks_inv) + ", KS current " + fmt("%.4f", ks_cur) +
                    "; negative controls: invariance (0.5,0.1,0.4) p = " + fmt("%.3g", neg_inv.p_value) +
                    ", current with corrupted nu p = " + fmt("%.3g", neg_cur.p_value)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
