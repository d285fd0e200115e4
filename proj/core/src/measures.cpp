#include "bbs/measures.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bbs/error.hpp"
#include "bbs/local_map.hpp"

namespace bbs {

double detailed_balance_residual(Capacity J, Capacity K, const Pmf& mu, const Pmf& nu) {
  require_supported(mu, J, "mu");
  require_supported(nu, K, "nu");
  const LocalRule f(J, K);
  const std::int64_t amax = std::min<std::int64_t>(mu.max_index(), J.raw());
  const std::int64_t bmax = std::min<std::int64_t>(nu.max_index(), K.raw());
  double worst = 0.0;
  for (std::int64_t a = 0; a <= amax; ++a) {
    for (std::int64_t b = 0; b <= bmax; ++b) {
      const CellPair p = f(a, b);
      worst = std::max(worst, std::abs(mu[a] * nu[b] - mu[p.a] * nu[p.b]));
    }
  }
  return worst;
}

namespace {

// Carrier chain on loads lo..hi; transitions above hi are folded into hi.
struct Chain {
  std::int64_t lo = 0;
  std::int64_t n = 0;
  Eigen::MatrixXd P;
  Eigen::VectorXd leak;
};

Chain build_chain(Capacity J, Capacity K, const Pmf& mu, std::int64_t lo, std::int64_t hi) {
  const LocalRule f(J, K);
  const auto support = mu.support();
  const double mass = mu.total();
  Chain c;
  c.lo = lo;
  c.n = hi - lo + 1;
  c.P = Eigen::MatrixXd::Zero(c.n, c.n);
  c.leak = Eigen::VectorXd::Zero(c.n);
  for (std::int64_t a = lo; a <= hi; ++a) {
    for (auto x : support) {
      const double p = mu[x] / mass;
      std::int64_t b = f.load(x, a);
      if (b > hi) {
        c.leak(a - lo) += p;
        b = hi;
      }
      if (b < lo) throw Error(ErrorCode::PreconditionFailed, "carrier chain leaves its state range");
      c.P(a - lo, b - lo) += p;
    }
  }
  return c;
}

// States of the unique closed communicating class.
std::vector<std::int64_t> closed_class(const std::vector<std::vector<Eigen::Index>>& adj) {
  const auto n = adj.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    auto& r = reach[s];
    std::vector<std::size_t> stack{s};
    r[s] = 1;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (auto j : adj[i]) {
        const auto u = static_cast<std::size_t>(j);
        if (!r[u]) {
          r[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  std::vector<std::int64_t> first_class;
  std::int64_t classes = 0;
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    bool closed = true;
    std::vector<std::int64_t> members;
    for (std::size_t j = 0; j < n; ++j) {
      if (!reach[i][j]) continue;
      if (reach[j][i]) {
        members.push_back(static_cast<std::int64_t>(j));
      } else {
        closed = false;
      }
    }
    for (auto j : members) seen[static_cast<std::size_t>(j)] = 1;
    if (closed) {
      ++classes;
      if (classes == 1) first_class = members;
    }
  }
  if (classes != 1) {
    throw Error(ErrorCode::PreconditionFailed,
                "carrier chain has " + std::to_string(classes) + " closed classes; stationary law not unique");
  }
  return first_class;
}

// Stationary vector of P restricted to its closed class, on all n states.
Eigen::VectorXd stationary(const Eigen::MatrixXd& P) {
  const auto n = P.rows();
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(n));
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (P(i, j) > 0.0) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        entries.emplace_back(j, i, P(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> Pt(n, n);
  Pt.setFromTriplets(entries.begin(), entries.end());

  const auto cls = closed_class(adj);
  const auto m = static_cast<Eigen::Index>(cls.size());
  Eigen::MatrixXd A(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) A(i, j) = P(cls[static_cast<std::size_t>(j)], cls[static_cast<std::size_t>(i)]);
    A(i, i) -= 1.0;
  }
  A.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  Eigen::VectorXd x = A.partialPivLu().solve(rhs);
  for (Eigen::Index i = 0; i < m; ++i) x(i) = std::max(0.0, x(i));
  Eigen::VectorXd pi = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) pi(cls[static_cast<std::size_t>(i)]) = x(i);
  pi /= pi.sum();
  // Lazy power iteration polish; the lazy chain is aperiodic with the same
  // stationary law.
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd next = 0.5 * (pi + Pt * pi);
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().sum();
    pi = next;
    if (change < 1e-15) break;
  }
  const double residual = (Pt * pi - pi).cwiseAbs().sum();
  if (residual > 1e-12) {
    throw Error(ErrorCode::PreconditionFailed, "stationary solve did not converge (residual " + std::to_string(residual) + ")");
  }
  return pi;
}

}  // namespace

Kernel w_chain(Capacity J, Capacity K, const Pmf& mu, std::int64_t state_cap) {
  require_supported(mu, J, "mu");
  const std::int64_t hi = K.is_finite() ? K.raw() : state_cap;
  if (hi < 0) throw Error(ErrorCode::InvalidParams, "state cap must be nonnegative");
  const Chain c = build_chain(J, K, mu, 0, hi);
  Kernel k;
  k.states = c.n;
  k.P.resize(static_cast<std::size_t>(c.n * c.n));
  for (std::int64_t a = 0; a < c.n; ++a) {
    for (std::int64_t b = 0; b < c.n; ++b) k.P[static_cast<std::size_t>(a * c.n + b)] = c.P(a, b);
  }
  if (K.is_infinite() && c.leak.sum() > 0.0) {
    const std::int64_t lo = std::min(underline_r(mu), hi);
    const Chain sub = build_chain(J, K, mu, lo, hi);
    const Eigen::VectorXd pi = stationary(sub.P);
    k.leaked = pi.dot(sub.leak);
    if (k.leaked > 1e-9) {
      throw Error(ErrorCode::TruncationTooSmall,
                  "stationary mass " + std::to_string(k.leaked) + " leaks past state cap " + std::to_string(hi));
    }
  }
  return k;
}

bool mrev_member(Capacity J, Capacity K, const Pmf& mu) {
  require_supported(mu, J, "mu");
  if (J == K) return true;
  if (J > K) return 2 * r_val(J, mu) < K.raw();
  if (K.is_infinite()) return 2.0 * mean(mu) < static_cast<double>(J.raw());
  return 2 * r_val(J, mu) < J.raw();
}

Pmf dual_measure(Capacity J, Capacity K, const Pmf& mu) {
  require_supported(mu, J, "mu");
  if (J == K) return mu;
  if (!mrev_member(J, K, mu)) {
    throw Error(ErrorCode::NotInMrev, "mu is outside M^rev for (J,K)=(" + to_string(J) + "," + to_string(K) + ")");
  }
  if (K.is_finite()) {
    const std::int64_t r = r_val(J, mu);
    const std::int64_t lo = r;
    const std::int64_t hi = K.raw() - r;
    const Chain c = build_chain(J, K, mu, lo, hi);
    const Eigen::VectorXd pi = stationary(c.P);
    std::vector<double> w(static_cast<std::size_t>(hi) + 1, 0.0);
    for (std::int64_t a = lo; a <= hi; ++a) w[static_cast<std::size_t>(a)] = pi(a - lo);
    return Pmf::normalized(std::move(w));
  }

  const std::int64_t lo = underline_r(mu);
  std::int64_t span = 64 + 4 * std::min<std::int64_t>(mu.max_index(), 64);
  while (true) {
    const std::int64_t hi = lo + span;
    const Chain c = build_chain(J, K, mu, lo, hi);
    const Eigen::VectorXd pi = stationary(c.P);
    const double leaked = pi.dot(c.leak);
    const double tail = pi.tail(std::min<Eigen::Index>(c.n, 8)).sum();
    if (leaked < 1e-15 && tail < 1e-14) {
      std::vector<double> w(static_cast<std::size_t>(hi) + 1, 0.0);
      for (std::int64_t a = lo; a <= hi; ++a) w[static_cast<std::size_t>(a)] = pi(a - lo);
      double cut = 0.0;
      while (w.size() > 1 && cut + w.back() < 1e-13) {
        cut += w.back();
        w.pop_back();
      }
      return Pmf(std::move(w), true);
    }
    if (span >= 4096) {
      throw Error(ErrorCode::TruncationTooSmall, "carrier law still has mass near state " + std::to_string(hi));
    }
    span *= 2;
  }
}

OracleReport invariance_oracle(Capacity J, Capacity K, const Pmf& mu, int k, const std::optional<Pmf>& nu_in) {
  if (k < 1 || k > 4) throw Error(ErrorCode::InvalidParams, "oracle supports 1 <= k <= 4");
  require_supported(mu, J, "mu");
  const Pmf nu = nu_in ? *nu_in : dual_measure(J, K, mu);
  require_supported(nu, K, "nu");
  const auto smu = mu.support();
  const auto snu = nu.support();
  double terms = static_cast<double>(snu.size());
  for (int i = 0; i < k; ++i) terms *= static_cast<double>(smu.size());
  if (terms > 1e7) throw Error(ErrorCode::StateSpaceTooLarge, "oracle needs " + std::to_string(terms) + " terms");

  OracleReport rep;
  rep.k = k;
  rep.terms = static_cast<std::int64_t>(terms);
  const LocalRule f(J, K);
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> out(static_cast<std::size_t>(k));
  for (auto w0 : snu) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      double p = nu[w0];
      std::int64_t b = w0;
      for (int i = 0; i < k; ++i) {
        const std::int64_t a = smu[idx[static_cast<std::size_t>(i)]];
        p *= mu[a];
        const CellPair q = f(a, b);
        out[static_cast<std::size_t>(i)] = q.a;
        b = q.b;
      }
      rep.law[out] += p;
      int pos = 0;
      while (pos < k && ++idx[static_cast<std::size_t>(pos)] == smu.size()) idx[static_cast<std::size_t>(pos++)] = 0;
      if (pos == k) break;
    }
  }

  auto product = [&](const std::vector<std::int64_t>& key) {
    double p = 1.0;
    for (auto a : key) p *= mu[a];
    return p;
  };
  for (const auto& [key, p] : rep.law) rep.max_deviation = std::max(rep.max_deviation, std::abs(p - product(key)));
  std::fill(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<std::int64_t> key(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) key[static_cast<std::size_t>(i)] = smu[idx[static_cast<std::size_t>(i)]];
    if (!rep.law.count(key)) rep.max_deviation = std::max(rep.max_deviation, product(key));
    int pos = 0;
    while (pos < k && ++idx[static_cast<std::size_t>(pos)] == smu.size()) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return rep;
}

}  // namespace bbs
