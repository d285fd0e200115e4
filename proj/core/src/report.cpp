#include "bbs/report.hpp"

#include <cmath>
#include <json.hpp>

namespace bbs {

namespace {

using nlohmann::json;

// Doubles are emitted as raw 17-digit literals.
json prob(double p) {
  if (!std::isfinite(p)) return json(nullptr);
  return json::parse(format_probability(p));
}

json capacity(Capacity c) {
  return c.is_infinite() ? json("inf") : json(c.raw());
}

json chi(const ChiSquare& c) {
  return {{"statistic", prob(c.statistic)}, {"dof", c.dof}, {"p_value", prob(c.p_value)}};
}

}  // namespace

std::vector<std::string> speed_records(const SpeedEstimate& est, Capacity J, Capacity K, std::uint64_t seed) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < est.per_replica.size(); ++r) {
    out.push_back(json{{"record", "replica"}, {"replica", r}, {"x_over_t", prob(est.per_replica[r])}}.dump());
  }
  out.push_back(json{{"record", "summary"},
                     {"J", capacity(J)},
                     {"K", capacity(K)},
                     {"seed", seed},
                     {"t_max", est.t_max},
                     {"replicas", est.replicas},
                     {"window", est.window},
                     {"estimate", prob(est.ratio_estimate)},
                     {"std_error", prob(est.std_error)},
                     {"theoretical", prob(est.theoretical)}}
                    .dump());
  return out;
}

std::vector<std::string> invariance_records(const InvarianceReport& rep, Capacity J, Capacity K, std::uint64_t seed) {
  std::vector<std::string> out;
  for (const auto& row : rep.rows) {
    out.push_back(json{{"record", "row"},
                       {"t", row.t},
                       {"tv_marginal", prob(row.tv_marginal)},
                       {"tv_pair", prob(row.tv_pair)},
                       {"chi2_marginal", chi(row.marginal)}}
                      .dump());
  }
  json summary{{"record", "summary"},
               {"J", capacity(J)},
               {"K", capacity(K)},
               {"seed", seed},
               {"L", rep.L},
               {"T_max", rep.T_max},
               {"replicas", rep.replicas},
               {"chi2_marginal", chi(rep.marginal)},
               {"chi2_pair", chi(rep.pair)},
               {"p_value", prob(rep.p_value)},
               {"significance", prob(rep.significance)},
               {"pass", rep.pass}};
  if (!rep.warning.empty()) summary["warning"] = rep.warning;
  out.push_back(summary.dump());
  return out;
}

std::string current_iid_record(const CurrentIidReport& rep, std::uint64_t seed) {
  return json{{"record", "current_iid"},
              {"seed", seed},
              {"column", rep.column},
              {"T", rep.T},
              {"chi2_marginal", chi(rep.marginal)},
              {"lag1", prob(rep.lag1)},
              {"lag1_bound", prob(rep.lag1_bound)},
              {"p_value", prob(rep.p_value)},
              {"pass", rep.pass}}
      .dump();
}

std::string classify_record(const ClassifyResult& res, Capacity J, Capacity K) {
  json j{{"record", "classify"},
         {"J", capacity(J)},
         {"K", capacity(K)},
         {"verdict", to_string(res.verdict)},
         {"family", to_string(res.family)},
         {"r", res.r_shift},
         {"reflected", res.reflected},
         {"residual", prob(res.residual)}};
  if (res.family == Family::StbGeo) {
    j["m"] = res.params.m;
    j["alpha"] = prob(res.params.alpha);
    j["beta"] = prob(res.params.beta);
  }
  if (!res.reason.empty()) j["reason"] = res.reason;
  return j.dump();
}

std::string duality_record(const DualityReport& rep) {
  return json{{"record", "duality"},
              {"checked", rep.checked},
              {"violations", rep.violations},
              {"intertwining_checked", rep.intertwining_checked},
              {"intertwining_mismatches", rep.intertwining_mismatches}}
      .dump();
}

}  // namespace bbs
