#include "bbs/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "bbs/error.hpp"

namespace bbs {

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (!std::isfinite(statistic)) return 0.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquare chi_square_test(const std::vector<double>& counts, const std::vector<double>& probs, double min_expected) {
  if (counts.size() != probs.size()) throw Error(ErrorCode::InvalidParams, "counts and probabilities differ in length");
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  ChiSquare out;
  if (n <= 0.0) return out;
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);

  std::vector<double> obs;
  std::vector<double> exp;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * probs[i] / mass;
    if (e <= 0.0) {
      if (counts[i] > 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.dof = std::max<int>(1, static_cast<int>(counts.size()) - 1);
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    if (e < min_expected) {
      pooled_obs += counts[i];
      pooled_exp += e;
    } else {
      obs.push_back(counts[i]);
      exp.push_back(e);
    }
  }
  if (pooled_exp > 0.0) {
    if (pooled_exp >= min_expected || exp.empty()) {
      obs.push_back(pooled_obs);
      exp.push_back(pooled_exp);
    } else {
      const auto k = static_cast<std::size_t>(std::min_element(exp.begin(), exp.end()) - exp.begin());
      obs[k] += pooled_obs;
      exp[k] += pooled_exp;
    }
  }
  for (std::size_t i = 0; i < obs.size(); ++i) out.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  out.dof = static_cast<int>(obs.size()) - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

double lag1_autocorrelation(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 3) return 0.0;
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (xs[i] - m) * (xs[i] - m);
    if (i + 1 < n) num += (xs[i] - m) * (xs[i + 1] - m);
  }
  return den > 0.0 ? num / den : 0.0;
}

double ks_uniform(std::vector<double> samples) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = std::clamp(samples[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace bbs
