#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bbs/block_io.hpp"
#include "bbs/error.hpp"
#include "bbs/evolution.hpp"
#include "bbs/experiments.hpp"
#include "bbs/measures.hpp"
#include "bbs/report.hpp"
#include "bbs/rng.hpp"

namespace bbs::cli {

namespace {

struct Globals {
  std::string J = "1";
  std::string K = "inf";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool strict = false;
  std::string format = "text";
};

struct EvolveArgs {
  std::string config;
  std::int64_t steps = 10;
  std::string boundary = "zero";
  std::int64_t floor = 0;
  double burn_in = 0.25;
  std::int64_t left_seed = 0;
  std::vector<std::int64_t> seeds;
  std::string mu;
  bool extend = true;
  std::string out;
};

struct MeasureArgs {
  std::string mu;
  std::string nu;
  double tol = 1e-9;
  double oracle_tol = 1e-10;
  int k = 2;
};

struct ExperimentArgs {
  std::string mu;
  std::int64_t t_max = 2000;
  std::int64_t replicas = 32;
  std::int64_t L = 1000;
  double significance = 0.01;
  bool current_iid = false;
  std::int64_t iid_steps = 2000;
};

// Raised for inputs that parse but violate a command precondition.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidCapacity:
    case ErrorCode::InvalidCell:
    case ErrorCode::InvalidParams:
    case ErrorCode::ParseError:
    case ErrorCode::FloorTooLarge:
      return kUsage;
    default:
      return kDomain;
  }
}

Capacity system_capacity_from(const std::string& text) {
  const Capacity c = parse_capacity(text);
  require_system_capacity(c, "capacity");
  return c;
}

std::uint64_t resolve_seed(const Globals& g) { return g.seed ? *g.seed : entropy_seed(); }

Pmf require_pmf(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_pmf(text);
}

bool json(const Globals& g) { return g.format == "json"; }

Config build_config(const Globals& g, const EvolveArgs& a, Capacity J, Capacity K, std::uint64_t seed,
                    std::ostream& out) {
  if (a.config.empty()) throw UsageError("--config is required");
  if (a.steps < 0) throw UsageError("--steps must be nonnegative");
  BoundaryMode mode = ZeroPad{};
  if (a.boundary == "seeded") {
    mode = SeededCarrier{a.left_seed, a.seeds};
  } else if (a.boundary == "detect") {
    const Capacity lo = min(J, K);
    if (lo.is_finite() && lo.raw() <= 2 * a.floor) {
      throw UsageError("--floor " + std::to_string(a.floor) + " needs min{J,K} > 2 floor");
    }
    mode = Detect{a.floor, a.burn_in};
  } else if (a.boundary == "iid") {
    std::vector<std::int64_t> currents = a.seeds;
    if (currents.empty()) {
      const Pmf mu = require_pmf(a.mu, "--mu (or --seeds) for --boundary iid");
      const Pmf nu = dual_measure(J, K, mu);
      Stream s(RngSpec{seed, 0}, StreamRole::Currents);
      const Sampler draw(nu);
      for (std::int64_t t = 0; t < std::max<std::int64_t>(a.steps, 1); ++t) currents.push_back(draw(s));
      if (!json(g)) out << "seed=" << seed << "\n";
    }
    mode = IidInvariant{currents};
  } else if (a.boundary != "zero") {
    throw UsageError("unknown boundary '" + a.boundary + "'");
  }
  return parse_config(a.config, J, mode);
}

SpaceTimeBlock build_block(const Globals& g, const EvolveArgs& a, Capacity J, Capacity K, std::ostream& out) {
  const bool random = a.boundary == "iid" && a.seeds.empty();
  const std::uint64_t seed = random ? resolve_seed(g) : 0;
  const Config c = build_config(g, a, J, K, seed, out);
  EvolveOptions opt;
  opt.extend_right = a.extend && a.boundary == "zero";
  return evolve_block(J, K, c, a.steps, opt);
}

int cmd_evolve(const Globals& g, const EvolveArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const SpaceTimeBlock b = build_block(g, a, J, K, out);
  if (a.out.empty()) {
    write_occupancy_csv(out, b);
    return kOk;
  }
  write_block_csv(b, a.out);
  const auto paths = block_paths(a.out);
  std::vector<std::int64_t> totals;
  for (const auto& row : b.occupancy) {
    std::int64_t s = 0;
    for (auto x : row) s += x;
    totals.push_back(s);
  }
  const bool conserved = std::all_of(totals.begin(), totals.end(), [&](auto x) { return x == totals.front(); });
  out << "wrote " << paths.occupancy.string() << " " << paths.carrier.string() << " " << paths.currents.string()
      << "\n";
  out << "steps=" << b.steps() << " offset=" << b.offset << " width=" << b.width()
      << " balls=" << (totals.empty() ? 0 : totals.front()) << " conserved=" << (conserved ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_dual(const Globals& g, const EvolveArgs& a, const std::string& in, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const SpaceTimeBlock b = in.empty() ? build_block(g, a, J, K, out) : read_block_csv(in, J, K);
  const DualityReport rep = duality_verify(b);
  if (json(g)) {
    out << duality_record(rep) << "\n";
  } else {
    out << "checked=" << rep.checked << " violations=" << rep.violations
        << " intertwining_checked=" << rep.intertwining_checked
        << " intertwining_mismatches=" << rep.intertwining_mismatches << "\n";
  }
  return rep.ok() ? kOk : kDomain;
}

int cmd_classify(const Globals& g, const MeasureArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  const ClassifyResult res = classify_invariant(J, K, mu, a.tol);
  if (json(g)) {
    out << classify_record(res, J, K) << "\n";
  } else {
    out << describe(res) << "\n";
  }
  if (res.verdict == Verdict::NotInvariant && !json(g)) {
    try {
      const auto rep = invariance_oracle(J, K, mu, a.k);
      out << "oracle_deviation=" << format_probability(rep.max_deviation) << " k=" << rep.k << "\n";
    } catch (const Error& e) {
      out << "oracle unavailable: " << e.what() << "\n";
    }
  }
  return kOk;
}

int cmd_dual_measure(const Globals& g, const MeasureArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  const Pmf nu = dual_measure(J, K, mu);
  out << format_pmf(nu) << "\n";
  out << "r=" << r_val(K, nu) << " underline_r=" << underline_r(nu) << " mean=" << format_probability(mean(nu))
      << (nu.truncated() ? " truncated_at=" + std::to_string(nu.max_index()) : std::string()) << "\n";
  return kOk;
}

int cmd_detailed_balance(const Globals& g, const MeasureArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  const Pmf nu = a.nu.empty() ? dual_measure(J, K, mu) : parse_pmf(a.nu);
  const double res = detailed_balance_residual(J, K, mu, nu);
  out << "residual=" << format_probability(res) << " balanced=" << (res < a.tol ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_oracle(const Globals& g, const MeasureArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  std::optional<Pmf> nu;
  if (!a.nu.empty()) nu = parse_pmf(a.nu);
  const auto rep = invariance_oracle(J, K, mu, a.k, nu);
  out << "k=" << rep.k << " terms=" << rep.terms << " max_deviation=" << format_probability(rep.max_deviation)
      << " invariant=" << (rep.max_deviation < a.oracle_tol ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_speed(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  const std::uint64_t seed = resolve_seed(g);
  const SpeedEstimate est = speed_estimate(J, K, mu, a.t_max, a.replicas, seed, g.threads);
  if (json(g)) {
    for (const auto& line : speed_records(est, J, K, seed)) out << line << "\n";
  } else {
    out << "seed=" << seed << "\n";
    out << "estimate=" << format_probability(est.ratio_estimate) << " std_error=" << format_probability(est.std_error)
        << " theoretical=" << format_probability(est.theoretical) << " t_max=" << est.t_max
        << " replicas=" << est.replicas << " window=" << est.window << "\n";
  }
  return kOk;
}

int cmd_invariance(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const Capacity J = system_capacity_from(g.J);
  const Capacity K = system_capacity_from(g.K);
  const Pmf mu = require_pmf(a.mu, "--mu");
  const std::uint64_t seed = resolve_seed(g);
  const InvarianceReport rep = invariance_mc_test(J, K, mu, a.L, a.t_max, a.replicas, seed, a.significance, g.threads);
  bool pass = rep.pass;
  if (json(g)) {
    for (const auto& line : invariance_records(rep, J, K, seed)) out << line << "\n";
  } else {
    out << "seed=" << seed << "\n";
    if (!rep.warning.empty()) out << "warning: " << rep.warning << "\n";
    for (const auto& r : rep.rows) {
      out << "t=" << r.t << " tv_marginal=" << format_probability(r.tv_marginal)
          << " tv_pair=" << format_probability(r.tv_pair) << " chi2_p=" << format_probability(r.marginal.p_value)
          << "\n";
    }
    out << "pair_chi2=" << format_probability(rep.pair.statistic) << " dof=" << rep.pair.dof
        << " p_value=" << format_probability(rep.p_value) << " pass=" << (rep.pass ? "yes" : "no") << "\n";
  }
  if (a.current_iid) {
    const auto sb = sample_stationary_block(J, K, mu, a.L, a.iid_steps, RngSpec{seed, 0});
    const auto cr = current_iid_test(sb.block, sb.nu, a.significance);
    pass = pass && cr.pass;
    if (json(g)) {
      out << current_iid_record(cr, seed) << "\n";
    } else {
      out << "current column=" << cr.column << " T=" << cr.T << " chi2_p=" << format_probability(cr.marginal.p_value)
          << " lag1=" << format_probability(cr.lag1) << " bound=" << format_probability(cr.lag1_bound)
          << " pass=" << (cr.pass ? "yes" : "no") << "\n";
    }
  }
  return (!pass && g.strict) ? kStatistical : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Box-ball system simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config-file", "", "key = value file with flag defaults");

  Globals g;
  app.add_option("--J", g.J, "Box capacity (positive integer or inf)")->capture_default_str();
  app.add_option("--K", g.K, "Carrier capacity (positive integer or inf)")->capture_default_str();
  app.add_option("--seed", g.seed, "Master seed; drawn from entropy and echoed when omitted");
  app.add_option("--threads", g.threads, "Worker threads for replicas")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "Exit 4 when a statistical test fails");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  EvolveArgs ev;
  auto add_evolve_flags = [&ev](CLI::App* sub) {
    sub->add_option("--config", ev.config, "Initial window as offset:v0,v1,...");
    sub->add_option("--steps", ev.steps, "Number of time steps")->capture_default_str();
    sub->add_option("--boundary", ev.boundary, "zero, seeded, detect or iid")
        ->check(CLI::IsMember({"zero", "seeded", "detect", "iid"}))
        ->capture_default_str();
    sub->add_option("--floor", ev.floor, "Detect mode floor r")->capture_default_str();
    sub->add_option("--burn-in", ev.burn_in, "Detect mode burn-in fraction (J<K=inf)")->capture_default_str();
    sub->add_option("--left-seed", ev.left_seed, "Seeded mode carrier load at t=0")->capture_default_str();
    sub->add_option("--seeds", ev.seeds, "Left currents for t>=1 (seeded) or t>=0 (iid)")->delimiter(',');
    sub->add_option("--mu", ev.mu, "Box law used to sample iid currents");
    sub->add_flag("--extend,!--no-extend", ev.extend, "Zero boundary: widen the window so no ball leaves");
  };

  auto* evolve = app.add_subcommand("evolve", "Evolve a configuration and write space-time CSVs");
  add_evolve_flags(evolve);
  evolve->add_option("--out", ev.out, "Occupancy CSV path (stdout if omitted)");

  std::string dual_in;
  auto* dual = app.add_subcommand("dual", "Verify the configuration/current duality on a block");
  add_evolve_flags(dual);
  dual->add_option("--in", dual_in, "Occupancy CSV written by evolve");

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "Measure tools");
  measure->require_subcommand(1);
  measure->fallthrough();
  measure->add_option("--mu", ma.mu, "Box law: weights, bernoulli:p, uniform:J, point:k, stbgeo:N,alpha,beta,m");
  measure->add_option("--nu", ma.nu, "Carrier law (defaults to the dual of mu)");
  measure->add_option("--tol", ma.tol, "Structural tolerance")->capture_default_str();
  measure->add_option("--oracle-tol", ma.oracle_tol, "Oracle deviation threshold")->capture_default_str();
  measure->add_option("--k", ma.k, "Sites in the exact oracle")->check(CLI::Range(1, 4))->capture_default_str();
  auto* classify = measure->add_subcommand("classify", "Classify mu as invariant or not");
  auto* dualm = measure->add_subcommand("dual-measure", "Stationary carrier law of mu");
  auto* db = measure->add_subcommand("detailed-balance", "Detailed-balance residual of (mu, nu)");
  auto* oracle = measure->add_subcommand("oracle", "Exact one-step pushforward deviation");
  for (auto* s : {classify, dualm, db, oracle}) s->fallthrough();

  ExperimentArgs xa;
  auto* speed = app.add_subcommand("speed", "Tagged-particle speed estimate");
  speed->add_option("--mu", xa.mu, "Box law");
  speed->add_option("--t-max", xa.t_max, "Time horizon")->check(CLI::PositiveNumber)->capture_default_str();
  speed->add_option("--replicas", xa.replicas, "Replicas")->check(CLI::PositiveNumber)->capture_default_str();

  auto* inv = app.add_subcommand("invariance", "Monte Carlo invariance and current tests");
  inv->add_option("--mu", xa.mu, "Box law");
  inv->add_option("--L", xa.L, "Window length")->check(CLI::PositiveNumber)->capture_default_str();
  inv->add_option("--t-max", xa.t_max, "Time steps")->check(CLI::NonNegativeNumber);
  inv->add_option("--replicas", xa.replicas, "Replicas")->check(CLI::PositiveNumber)->capture_default_str();
  inv->add_option("--significance", xa.significance, "Test level")->capture_default_str();
  inv->add_flag("--current-iid", xa.current_iid, "Also test the boundary current column");
  inv->add_option("--iid-steps", xa.iid_steps, "Time steps for the current test")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*evolve) return cmd_evolve(g, ev, out);
    if (*dual) return cmd_dual(g, ev, dual_in, out);
    if (*classify) return cmd_classify(g, ma, out);
    if (*dualm) return cmd_dual_measure(g, ma, out);
    if (*db) return cmd_detailed_balance(g, ma, out);
    if (*oracle) return cmd_oracle(g, ma, out);
    if (*speed) return cmd_speed(g, xa, out);
    if (*inv) {
      if (inv->count("--t-max") == 0) xa.t_max = 10;
      return cmd_invariance(g, xa, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace bbs::cli
