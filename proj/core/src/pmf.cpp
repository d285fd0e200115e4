#include "bbs/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "bbs/error.hpp"

namespace bbs {

Pmf::Pmf(std::vector<double> weights, bool truncated) : w_(std::move(weights)), truncated_(truncated) {
  if (w_.empty()) throw Error(ErrorCode::InvalidParams, "pmf has no weights");
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "pmf weight is negative or not finite");
  }
  const double s = total();
  if (truncated_) {
    if (s > 1.0 + 1e-9 || s < 1.0 - 1e-9) {
      throw Error(ErrorCode::InvalidParams, "truncated pmf mass " + std::to_string(s) + " not near 1");
    }
    return;
  }
  if (std::abs(s - 1.0) > 1e-6) {
    throw Error(ErrorCode::InvalidParams, "pmf weights sum to " + format_probability(s));
  }
  for (double& x : w_) x /= s;
}

Pmf Pmf::point_mass(std::int64_t k) {
  if (k < 0) throw Error(ErrorCode::InvalidParams, "negative point mass");
  std::vector<double> w(static_cast<std::size_t>(k) + 1, 0.0);
  w.back() = 1.0;
  return Pmf(std::move(w));
}

Pmf Pmf::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParams, "bernoulli p outside [0,1]");
  return Pmf({1.0 - p, p});
}

Pmf Pmf::uniform(std::int64_t J) {
  if (J < 0) throw Error(ErrorCode::InvalidParams, "uniform needs J >= 0");
  return Pmf(std::vector<double>(static_cast<std::size_t>(J) + 1, 1.0 / static_cast<double>(J + 1)));
}

Pmf Pmf::normalized(std::vector<double> weights) {
  const double s = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidParams, "pmf weights have no mass");
  for (double& x : weights) x /= s;
  return Pmf(std::move(weights));
}

double Pmf::total() const noexcept {
  // Small entries first for a stable sum.
  std::vector<double> sorted = w_;
  std::sort(sorted.begin(), sorted.end());
  return std::accumulate(sorted.begin(), sorted.end(), 0.0);
}

std::vector<std::int64_t> Pmf::support() const {
  std::vector<std::int64_t> s;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] > 0.0) s.push_back(static_cast<std::int64_t>(i));
  }
  return s;
}

std::int64_t Pmf::support_max() const {
  for (std::size_t i = w_.size(); i-- > 0;) {
    if (w_[i] > 0.0) return static_cast<std::int64_t>(i);
  }
  return 0;
}

std::int64_t r_val(Capacity J, const Pmf& mu) {
  std::int64_t r = kUnbounded;
  for (auto a : mu.support()) r = std::min(r, std::min(a, J.minus(a)));
  return r;
}

std::int64_t underline_r(const Pmf& mu) {
  const auto s = mu.support();
  return s.empty() ? 0 : s.front();
}

double mean(const Pmf& mu) {
  double m = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) m += static_cast<double>(i) * mu.weights()[i];
  return m;
}

double tv_distance(const Pmf& p, const Pmf& q) {
  const std::int64_t n = std::max(p.max_index(), q.max_index());
  double d = 0.0;
  for (std::int64_t a = 0; a <= n; ++a) d += std::abs(p[a] - q[a]);
  return 0.5 * d;
}

void require_supported(const Pmf& mu, Capacity cap, const char* name) {
  if (!cap.admits(mu.support_max())) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " has mass above capacity " + to_string(cap));
  }
}

Pmf reflect(const Pmf& mu, std::int64_t J) {
  if (mu.support_max() > J) throw Error(ErrorCode::InvalidParams, "reflection needs support within [0,J]");
  std::vector<double> w(static_cast<std::size_t>(J) + 1, 0.0);
  for (std::int64_t a = 0; a <= J; ++a) w[static_cast<std::size_t>(J - a)] = mu[a];
  return Pmf(std::move(w), mu.truncated());
}

Pmf shift_up(const Pmf& mu, std::int64_t r) {
  std::vector<double> w(static_cast<std::size_t>(r), 0.0);
  w.insert(w.end(), mu.weights().begin(), mu.weights().end());
  return Pmf(std::move(w), mu.truncated());
}

double stbgeo_constant(Capacity N, double alpha, double beta) {
  if (N.is_infinite()) return (1.0 - alpha * alpha) / (1.0 + alpha * beta);
  double s = 0.0;
  double p = 1.0;
  for (std::int64_t x = 0; x <= N.raw(); ++x) {
    s += (x % 2 == 0) ? p : p * beta;
    p *= alpha;
  }
  return 1.0 / s;
}

Pmf stbgeo(Capacity N, double alpha, double beta, std::int64_t m, double tail_eps) {
  if (!(alpha > 0.0) || !(beta > 0.0) || m < 1 || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidParams, "stbgeo needs alpha > 0, beta > 0, m >= 1");
  }
  if (N.is_infinite() && !(alpha < 1.0)) throw Error(ErrorCode::InvalidParams, "stbgeo with N=inf needs alpha < 1");
  if (N.is_finite() && N.raw() < 0) throw Error(ErrorCode::InvalidParams, "stbgeo needs N >= 0");
  const double C = stbgeo_constant(N, alpha, beta);
  std::vector<double> w;
  if (N.is_finite()) {
    const std::int64_t n = N.raw();
    w.assign(static_cast<std::size_t>(n * m) + 1, 0.0);
    double p = C;
    for (std::int64_t x = 0; x <= n; ++x) {
      w[static_cast<std::size_t>(x * m)] = (x % 2 == 0) ? p : p * beta;
      p *= alpha;
    }
    return Pmf(std::move(w));
  }
  // With p = C alpha^(x+1), the tail past x is at most p max(1,beta) / (1 - alpha).
  const double bound = std::max(1.0, beta) / (1.0 - alpha);
  double p = C;
  for (std::int64_t x = 0;; ++x) {
    w.resize(static_cast<std::size_t>(x * m) + 1, 0.0);
    w.back() = (x % 2 == 0) ? p : p * beta;
    p *= alpha;
    if (bound * p < tail_eps) break;
    if (w.size() > (std::size_t{1} << 24)) throw Error(ErrorCode::InvalidParams, "stbgeo tail too heavy");
  }
  return Pmf(std::move(w), true);
}

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw Error(ErrorCode::ParseError, "bad number '" + tmp + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(s.substr(0, comma));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::int64_t as_count(double v, const char* what) {
  if (v < 0 || v != std::floor(v)) throw Error(ErrorCode::ParseError, std::string(what) + " must be a nonnegative integer");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Pmf parse_pmf(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    std::vector<double> w;
    for (auto item : split(text)) w.push_back(parse_double(item));
    return Pmf(std::move(w));
  }
  const std::string_view family = text.substr(0, colon);
  const auto args = split(text.substr(colon + 1));
  if (family == "bernoulli" && args.size() == 1) return Pmf::bernoulli(parse_double(args[0]));
  if (family == "uniform" && args.size() == 1) return Pmf::uniform(as_count(parse_double(args[0]), "J"));
  if (family == "point" && args.size() == 1) return Pmf::point_mass(as_count(parse_double(args[0]), "k"));
  if (family == "stbgeo" && args.size() == 4) {
    const Capacity N = args[0] == "inf" ? kInfinite : Capacity::finite(as_count(parse_double(args[0]), "N"));
    return stbgeo(N, parse_double(args[1]), parse_double(args[2]), as_count(parse_double(args[3]), "m"));
  }
  throw Error(ErrorCode::ParseError, "unknown pmf family '" + std::string(text) + "'");
}

std::string format_probability(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

std::string format_pmf(const Pmf& mu) {
  std::string out;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) out += ',';
    out += format_probability(mu.weights()[i]);
  }
  return out;
}

}  // namespace bbs
