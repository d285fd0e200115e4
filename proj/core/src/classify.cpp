#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "bbs/error.hpp"
#include "bbs/measures.hpp"

namespace bbs {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Invariant: return "Invariant";
    case Verdict::NotInvariant: return "NotInvariant";
    case Verdict::NotInMrev: return "NotInMrev";
  }
  return "?";
}

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::None: return "None";
    case Family::TrivialShift: return "TrivialShift";
    case Family::StbGeo: return "StbGeo";
    case Family::JEqualsK: return "JEqualsK";
  }
  return "?";
}

namespace {

Capacity reduce(Capacity c, std::int64_t r) {
  return c.is_infinite() ? kInfinite : Capacity::finite(c.raw() - 2 * r);
}

bool even_multiple(Capacity c, std::int64_t m) {
  return c.is_infinite() || c.raw() % (2 * m) == 0;
}

ClassifyResult not_invariant(std::string reason, std::int64_t r, bool reflected) {
  ClassifyResult res;
  res.verdict = Verdict::NotInvariant;
  res.r_shift = r;
  res.reflected = reflected;
  res.residual = std::numeric_limits<double>::quiet_NaN();
  res.reason = std::move(reason);
  return res;
}

// Fits the reduced measure (mu~(0) > 0) against the invariant families and
// returns its reduced dual, or an explanation of the failure.
struct ReducedFit {
  bool ok = false;
  Family family = Family::None;
  StbGeoParams params;
  Pmf dual;
  std::string reason;
};

ReducedFit fit_reduced(Capacity Jt, Capacity Kt, const Pmf& mt, double tol) {
  ReducedFit fit;
  const auto support = mt.support();
  const std::int64_t half = min(Jt, Kt).raw() / 2;
  if (support.back() <= half) {
    fit.ok = true;
    fit.family = Family::TrivialShift;
    fit.dual = mt;
    return fit;
  }

  const std::int64_t m = support[1];
  const std::int64_t top = mt.support_max();
  if (Jt.is_finite() && top != Jt.raw()) {
    fit.reason = "support maximum " + std::to_string(top) + " is not the reduced capacity " + to_string(Jt);
    return fit;
  }
  for (std::int64_t a = 0; a <= top; ++a) {
    const bool on_lattice = a % m == 0;
    if (on_lattice != (mt[a] > 0.0)) {
      fit.reason = "support is not m Z+ with m=" + std::to_string(m) + " (site " + std::to_string(a) + ")";
      return fit;
    }
  }
  if (Kt.is_finite() && Kt.raw() % m != 0) {
    fit.reason = "K~=" + to_string(Kt) + " is not a multiple of m=" + std::to_string(m);
    return fit;
  }

  const std::int64_t ell = top / m;
  double alpha = 0.0;
  double beta = 1.0;
  if (ell == 1 && Jt.is_finite()) {
    alpha = mt[m] / mt[0];
  } else {
    alpha = std::sqrt(mt[2 * m] / mt[0]);
    beta = mt[m] / (alpha * mt[0]);
  }
  if (std::abs(beta - 1.0) <= tol) beta = 1.0;
  const bool finite = Jt.is_finite() && Kt.is_finite();
  const bool bipartite_ok = even_multiple(Jt, m) && even_multiple(Kt, m);
  if (alpha >= 1.0 && !finite) {
    fit.reason = "alpha >= 1 needs finite capacities";
    return fit;
  }
  if (beta != 1.0 && !bipartite_ok) {
    fit.reason = "beta != 1 needs J~, K~ in 2m N (or inf)";
    return fit;
  }
  for (std::int64_t x = 0; x * m <= top; ++x) {
    const double expect = mt[0] * std::pow(alpha, static_cast<double>(x)) * (x % 2 ? beta : 1.0);
    if (std::abs(mt[x * m] - expect) > tol) {
      fit.reason = "weight at " + std::to_string(x * m) + " deviates from the stbGeo fit";
      return fit;
    }
  }
  const Capacity Nj = Jt.is_infinite() ? kInfinite : Capacity::finite(Jt.raw() / m);
  const Capacity Nk = Kt.is_infinite() ? kInfinite : Capacity::finite(Kt.raw() / m);
  fit.ok = true;
  fit.family = Family::StbGeo;
  fit.params = StbGeoParams{Nj, alpha, beta, m, stbgeo_constant(Nj, alpha, beta)};
  fit.dual = stbgeo(Nk, alpha, beta, m);
  return fit;
}

}  // namespace

ClassifyResult classify_invariant(Capacity J, Capacity K, const Pmf& mu, double tol) {
  require_supported(mu, J, "mu");
  ClassifyResult res;
  if (J == K) {
    res.verdict = Verdict::Invariant;
    res.family = Family::JEqualsK;
    res.dual = mu;
    res.residual = detailed_balance_residual(J, K, mu, mu);
    return res;
  }
  if (!mrev_member(J, K, mu)) {
    res.verdict = Verdict::NotInMrev;
    res.residual = std::numeric_limits<double>::quiet_NaN();
    res.reason = "outside M^rev";
    return res;
  }

  const std::int64_t r = r_val(J, mu);
  const bool reflected = r != underline_r(mu);
  if (reflected && (J.is_infinite() || K.is_infinite())) {
    return not_invariant("r differs from the support minimum with an infinite capacity", r, reflected);
  }
  const Capacity Jt = reduce(J, r);
  const Capacity Kt = reduce(K, r);

  std::vector<double> reduced;
  if (!reflected) {
    for (std::int64_t a = r; a <= mu.max_index(); ++a) reduced.push_back(mu[a]);
  } else {
    for (std::int64_t a = 0; a <= Jt.raw(); ++a) reduced.push_back(mu[J.raw() - r - a]);
  }
  const Pmf mt(std::move(reduced), mu.truncated());

  ReducedFit fit = fit_reduced(Jt, Kt, mt, tol);
  if (!fit.ok) return not_invariant(fit.reason, r, reflected);

  // Undo the reduction on the dual side: nu = E_r nu~, or sigma_K E_r nu~.
  std::vector<double> w;
  const auto& dt = fit.dual;
  const std::int64_t top = dt.support_max();
  if (!Kt.admits(top)) return not_invariant("dual support exceeds the reduced carrier capacity", r, reflected);
  if (!reflected) {
    w.assign(static_cast<std::size_t>(r), 0.0);
    w.insert(w.end(), dt.weights().begin(), dt.weights().begin() + top + 1);
  } else {
    w.assign(static_cast<std::size_t>(K.raw()) + 1, 0.0);
    for (std::int64_t b = 0; b <= top; ++b) w[static_cast<std::size_t>(K.raw() - r - b)] = dt[b];
  }
  const Pmf nu(std::move(w), dt.truncated());
  res.residual = detailed_balance_residual(J, K, mu, nu);
  if (!(res.residual < tol)) {
    return not_invariant("detailed-balance residual " + format_probability(res.residual) + " above tolerance", r,
                         reflected);
  }
  res.verdict = Verdict::Invariant;
  res.family = fit.family;
  res.params = fit.params;
  res.r_shift = r;
  res.reflected = reflected;
  res.dual = nu;
  return res;
}

std::string describe(const ClassifyResult& r) {
  std::string out = to_string(r.verdict);
  if (r.verdict != Verdict::Invariant) {
    if (!r.reason.empty()) out += " (" + r.reason + ")";
    return out;
  }
  out += ' ';
  out += to_string(r.family);
  char buf[160];
  if (r.family == Family::StbGeo) {
    std::snprintf(buf, sizeof buf, " m=%lld alpha=%.6g beta=%.6g r=%lld", static_cast<long long>(r.params.m),
                  r.params.alpha, r.params.beta, static_cast<long long>(r.r_shift));
    out += buf;
  } else if (r.family == Family::TrivialShift) {
    std::snprintf(buf, sizeof buf, " r=%lld", static_cast<long long>(r.r_shift));
    out += buf;
  }
  if (r.reflected) out += " reflected";
  return out;
}

}  // namespace bbs
