#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbs/capacity.hpp"
#include "bbs/pmf.hpp"

namespace bbs {

// max |mu(a) nu(b) - mu(F1(a,b)) nu(F2(a,b))| over the (truncated) grid.
double detailed_balance_residual(Capacity J, Capacity K, const Pmf& mu, const Pmf& nu);

// P(a -> b) = mu{x : F2(x, a) = b} on loads 0..states-1.
struct Kernel {
  std::int64_t states = 0;
  std::vector<double> P;  // row-major
  // Stationary mass sent past the cap (K infinite only).
  double leaked = 0.0;

  double operator()(std::int64_t a, std::int64_t b) const {
    return P[static_cast<std::size_t>(a * states + b)];
  }
};

// Loads above state_cap are folded into the cap state; only used when K is
// infinite. Throws TruncationTooSmall if more than 1e-9 stationary mass leaks.
Kernel w_chain(Capacity J, Capacity K, const Pmf& mu, std::int64_t state_cap = 256);

bool mrev_member(Capacity J, Capacity K, const Pmf& mu);

// Law of the canonical carrier W_0 under mu^Z. Throws NotInMrev.
Pmf dual_measure(Capacity J, Capacity K, const Pmf& mu);

enum class Verdict { Invariant, NotInvariant, NotInMrev };
enum class Family { None, TrivialShift, StbGeo, JEqualsK };
const char* to_string(Verdict v) noexcept;
const char* to_string(Family f) noexcept;

struct ClassifyResult {
  Verdict verdict = Verdict::NotInvariant;
  Family family = Family::None;
  StbGeoParams params;  // StbGeo only; N refers to the reduced box capacity
  std::int64_t r_shift = 0;
  bool reflected = false;
  // Detailed-balance residual against the reconstructed dual (NaN if none).
  double residual = 0.0;
  std::optional<Pmf> dual;
  std::string reason;
};

ClassifyResult classify_invariant(Capacity J, Capacity K, const Pmf& mu, double tol = 1e-9);
// One-line summary, e.g. "Invariant StbGeo m=1 alpha=0.5 beta=1 r=0".
std::string describe(const ClassifyResult& r);

struct OracleReport {
  int k = 0;
  std::int64_t terms = 0;
  double max_deviation = 0.0;
  // Exact joint law of ((T eta)_1, ..., (T eta)_k).
  std::map<std::vector<std::int64_t>, double> law;
};

// Exact pushforward of nu x mu^k through one sweep, compared with mu^k. The
// carrier law defaults to dual_measure(mu). Throws StateSpaceTooLarge.
OracleReport invariance_oracle(Capacity J, Capacity K, const Pmf& mu, int k,
                               const std::optional<Pmf>& nu = std::nullopt);

}  // namespace bbs
