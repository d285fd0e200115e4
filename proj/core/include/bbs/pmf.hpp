#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bbs/capacity.hpp"

namespace bbs {

// Probability vector over occupancies 0..size()-1. A truncated pmf stands
// for a law on Z+ whose tail past size()-1 is below the truncation epsilon.
class Pmf {
 public:
  Pmf() = default;
  // Nonnegative weights. Untruncated weights within 1e-6 of unit mass are
  // renormalized; anything further off throws InvalidParams.
  explicit Pmf(std::vector<double> weights, bool truncated = false);

  static Pmf point_mass(std::int64_t k);
  static Pmf bernoulli(double p);
  static Pmf uniform(std::int64_t J);
  // Divides by the sum.
  static Pmf normalized(std::vector<double> weights);

  double operator[](std::int64_t a) const noexcept {
    return a >= 0 && a < static_cast<std::int64_t>(w_.size()) ? w_[static_cast<std::size_t>(a)] : 0.0;
  }
  std::size_t size() const noexcept { return w_.size(); }
  std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(w_.size()) - 1; }
  const std::vector<double>& weights() const noexcept { return w_; }
  bool truncated() const noexcept { return truncated_; }
  double total() const noexcept;
  std::vector<std::int64_t> support() const;
  // Largest a with positive weight.
  std::int64_t support_max() const;

 private:
  std::vector<double> w_{1.0};
  bool truncated_ = false;
};

// min over the support of min{a, J - a}.
std::int64_t r_val(Capacity J, const Pmf& mu);
std::int64_t underline_r(const Pmf& mu);
double mean(const Pmf& mu);
double tv_distance(const Pmf& p, const Pmf& q);

// Throws InvalidParams if the support exceeds the capacity.
void require_supported(const Pmf& mu, Capacity cap, const char* name);

// a -> J - a.
Pmf reflect(const Pmf& mu, std::int64_t J);
// a -> a + r.
Pmf shift_up(const Pmf& mu, std::int64_t r);

struct StbGeoParams {
  Capacity N;
  double alpha = 0.5;
  double beta = 1.0;
  std::int64_t m = 1;
  double C = 0.0;
};

// P(X = m x) = C alpha^x beta^iota(x), x = 0..N, iota(x) = x mod 2.
Pmf stbgeo(Capacity N, double alpha, double beta, std::int64_t m, double tail_eps = 1e-12);
double stbgeo_constant(Capacity N, double alpha, double beta);

// Comma-separated weights or bernoulli:p, stbgeo:N,alpha,beta,m, uniform:J.
Pmf parse_pmf(std::string_view text);
// 17 significant digits, comma-separated.
std::string format_pmf(const Pmf& mu);
std::string format_probability(double p);

}  // namespace bbs
