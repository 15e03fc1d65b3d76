#include "maser/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maser/channel.hpp"
#include "maser/config.hpp"
#include "maser/ensemble.hpp"
#include "maser/errors.hpp"
#include "maser/measures.hpp"
#include "maser/resonance.hpp"
#include "maser/states.hpp"
#include "maser/verify.hpp"

namespace maser {

using nlohmann::json;
namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

// %.17g keeps doubles round-trippable and the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Command-line overrides, applied to the JSON document before validation so
// that flags and files go through the same checks.
struct Overrides {
  std::string config_path;
  std::optional<std::string> xi, eta;
  std::optional<double> theta, phi;
  std::optional<int> d;
  std::optional<std::int64_t> horizon, checkpoint_every, t_max, check_every;
  std::optional<std::size_t> trajectories;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rho0, out;
  std::optional<double> leakage_budget, tol;
  std::optional<int> outcome_horizon;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON run configuration");
    app->add_option("--xi", xi, "coupling xi (\"p/q\" or integer: exact)");
    app->add_option("--eta", eta, "detuning eta (\"p/q\" or integer: exact)");
    app->add_option("--theta", theta, "theta = beta*epsilon");
    app->add_option("--phi", phi, "phase per step tau*epsilon");
    app->add_option("--d", d, "truncation level");
    app->add_option("--horizon,-T", horizon, "number of steps");
    app->add_option("--trajectories,-n", trajectories, "ensemble size");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--checkpoint-every", checkpoint_every, "checkpoint stride (0: only start and end)");
    app->add_option("--rho0", rho0, "initial state: fock:K | thermal:THETA | mixture:K:W,... | coherentlike:A0,...");
    app->add_option("--out,-o", out, "output directory");
    app->add_option("--leakage-budget", leakage_budget, "allowed truncation leakage");
    app->add_option("--tol", tol, "channel convergence tolerance");
    app->add_option("--t-max", t_max, "channel iteration limit");
    app->add_option("--check-every", check_every, "channel distance stride");
    app->add_option("--s", outcome_horizon, "outcome horizon (<= 10)");
  }

  RunConfig resolve() const {
    json root = json::object();
    if (!config_path.empty()) {
      try {
        root = json::parse(read_file(config_path));
      } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
      }
    }
    // Flag values arrive as strings, so xi and eta given here are exact.
    auto& dimless = root["params"]["dimensionless"];
    if (xi) dimless["xi"] = *xi;
    if (eta) dimless["eta"] = *eta;
    if (theta) dimless["theta"] = *theta;
    if (phi) dimless["phi"] = *phi;
    if (dimless.is_null()) root["params"].erase("dimensionless");
    if (root["params"].is_null()) root.erase("params");
    if (d) root["d"] = *d;
    if (horizon) root["horizon"] = *horizon;
    if (trajectories) root["trajectories"] = *trajectories;
    if (seed) root["seed"] = *seed;
    if (checkpoint_every) root["checkpoint_every"] = *checkpoint_every;
    if (rho0) root["rho0"] = *rho0;
    if (out) root["output_dir"] = *out;
    if (leakage_budget) root["leakage_budget"] = *leakage_budget;
    if (tol) root["channel"]["tol"] = *tol;
    if (t_max) root["channel"]["t_max"] = *t_max;
    if (check_every) root["channel"]["check_every"] = *check_every;
    if (outcome_horizon) root["outcomes"]["horizon"] = *outcome_horizon;
    return parse_config(root.dump());
  }
};

json summary_header(const std::string& command, const RunConfig& cfg) {
  json j;
  j["format_version"] = kFormatVersion;
  j["command"] = command;
  j["config"] = json::parse(canonical_json(cfg));
  return j;
}

std::string out_path(const RunConfig& cfg, const std::string& name) { return (fs::path(cfg.output_dir) / name).string(); }

TrajectoryOptions trajectory_options(const RunConfig& cfg) {
  TrajectoryOptions o;
  o.leakage_budget = cfg.leakage_budget;
  o.guard = cfg.guard;
  return o;
}

void write_error_record(const RunConfig& cfg, const std::string& command, const TruncationOverflow& e) {
  json j = summary_header(command, cfg);
  j["error"] = "TruncationOverflow";
  j["step"] = e.step();
  j["leakage"] = e.leakage();
  j["message"] = e.what();
  write_atomic(out_path(cfg, "error.json"), j.dump(2) + "\n");
}

// Reference state for channel and outcome comparisons: the resonant limit when
// resonances cut {0..d}, the Gibbs state otherwise.
struct Target {
  DensityMatrix state;
  std::string kind;
};

Target channel_target(const RunConfig& cfg, const DensityMatrix& rho0) {
  const ResonanceSet rs = resonances_for(cfg.params, cfg.d + 1);  // d+1 tells whether the top sector is closed
  if (!rs.entries.empty()) {
    return {resonant_limit(rho0, sector_partition(rs, cfg.d), cfg.params.theta), "resonant_limit"};
  }
  return {invariant_state(cfg.params.theta, cfg.d), "gibbs"};
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------

int cmd_simulate_quantum(const RunConfig& cfg) {
  const Model model(cfg.params, cfg.d);
  const DensityMatrix rho0 = make_initial_state(cfg.rho0, cfg.d);
  EnsembleSpec spec;
  spec.horizon = cfg.horizon;
  spec.trajectories = cfg.trajectories;
  spec.master_seed = cfg.seed;
  spec.checkpoint_every = cfg.checkpoint_every;
  spec.options = trajectory_options(cfg);
  std::vector<TrajectoryRun> runs;
  try {
    runs = run_ensemble(rho0, model, spec);
  } catch (const TruncationOverflow& e) {
    write_error_record(cfg, "simulate", e);
    throw;
  }
  std::string csv = "traj_id,t,n_hat,m_max,gap,purity\n";
  std::map<int, std::size_t> hist;
  std::vector<double> gaps, mmax;
  double leakage = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const auto& c : runs[i].checkpoints)
      csv += std::to_string(i) + "," + std::to_string(c.t) + "," + std::to_string(c.n_hat) + "," + num(c.m_max) + "," +
             num(c.gap) + "," + num(c.purity) + "\n";
    const auto& last = runs[i].checkpoints.back();
    ++hist[last.n_hat];
    gaps.push_back(last.gap);
    mmax.push_back(last.m_max);
    leakage = std::max(leakage, runs[i].final_state.rho.leakage);
  }
  json j = summary_header("simulate", cfg);
  json h = json::object();
  for (const auto& [n, c] : hist) h[std::to_string(n)] = c;
  j["n_hat_histogram"] = h;
  j["median_gap"] = median(gaps);
  j["median_m_max"] = median(mmax);
  j["max_leakage"] = leakage;
  write_atomic(out_path(cfg, "checkpoints.csv"), csv);
  write_atomic(out_path(cfg, "summary.json"), j.dump(2) + "\n");
  std::cout << "simulate: " << runs.size() << " trajectories, median gap " << num(median(gaps)) << "\n";
  return kExitOk;
}

int cmd_simulate_classical(const RunConfig& cfg) {
  const BDKernel kernel = build_kernel(cfg.params, cfg.d);
  const DensityMatrix rho0 = make_initial_state(cfg.rho0, cfg.d);
  const Eigen::VectorXd pop = rho0.mat.diagonal().real();
  struct Path {
    std::string csv;
    std::vector<std::size_t> occupation;
    int final_level = 0;
  };
  const auto paths = parallel_map<Path>(cfg.trajectories, 0, [&](std::size_t i) {
    Rng rng(cfg.seed, i);
    // Initial level drawn from the populations of rho0.
    const double u = rng.uniform() * pop.sum();
    int level = 0;
    double acc = 0.0;
    for (int n = 0; n <= cfg.d; ++n) {
      acc += pop(n);
      if (pop(n) > 0.0) level = n;
      if (u < acc && pop(n) > 0.0) break;
    }
    Path p;
    p.occupation.assign(static_cast<std::size_t>(cfg.d) + 1, 0);
    ChainState s{level};
    const std::string id = std::to_string(i) + ",";
    p.csv += id + "0," + std::to_string(level) + ",\n";
    ++p.occupation[static_cast<std::size_t>(level)];
    for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
      ChainStep st;
      try {
        st = step_chain(s, kernel, rng);
      } catch (const TruncationOverflow& e) {
        throw TruncationOverflow(t, e.leakage(), "trajectory " + std::to_string(i) + ": " + e.what());
      }
      s = st.state;
      p.csv += id + std::to_string(t) + "," + std::to_string(s.level) + "," + std::string(label(st.outcome)) + "\n";
      ++p.occupation[static_cast<std::size_t>(s.level)];
    }
    p.final_level = s.level;
    return p;
  });
  std::string csv = "traj_id,t,level,outcome\n";
  std::vector<std::size_t> occ(static_cast<std::size_t>(cfg.d) + 1, 0);
  std::map<int, std::size_t> finals;
  for (const auto& p : paths) {
    csv += p.csv;
    for (std::size_t n = 0; n < occ.size(); ++n) occ[n] += p.occupation[n];
    ++finals[p.final_level];
  }
  json j = summary_header("simulate --classical", cfg);
  json o = json::object();
  for (std::size_t n = 0; n < occ.size(); ++n)
    if (occ[n]) o[std::to_string(n)] = occ[n];
  json f = json::object();
  for (const auto& [n, c] : finals) f[std::to_string(n)] = c;
  j["occupation_histogram"] = o;
  j["final_level_histogram"] = f;
  write_atomic(out_path(cfg, "classical.csv"), csv);
  write_atomic(out_path(cfg, "summary.json"), j.dump(2) + "\n");
  std::cout << "simulate --classical: " << paths.size() << " paths of " << cfg.horizon << " steps\n";
  return kExitOk;
}

int cmd_channel(const RunConfig& cfg) {
  const KrausSet ks = build_kraus(cfg.params, cfg.d);
  const DensityMatrix rho0 = make_initial_state(cfg.rho0, cfg.d);
  const Target target = channel_target(cfg, rho0);
  const ChannelReport rep =
      iterate_channel(rho0, ks, target.state, cfg.channel_tol, cfg.channel_t_max, cfg.channel_check_every);
  std::string csv = "t,distance\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    csv += std::to_string(rep.times[i]) + "," + num(rep.distances[i]) + "\n";
  json j = summary_header("channel", cfg);
  j["target"] = target.kind;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["final_distance"] = rep.distances.empty() ? 0.0 : rep.distances.back();
  j["leakage"] = rep.final_state.leakage;
  write_atomic(out_path(cfg, "channel.csv"), csv);
  write_atomic(out_path(cfg, "summary.json"), j.dump(2) + "\n");
  std::cout << "channel: " << (rep.converged ? "converged" : "not converged") << " after " << rep.iterations
            << " steps\n";
  return kExitOk;
}

json distribution_json(const OutcomeDistribution& dist) {
  json j = json::object();
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
    j[to_string(OutcomeDistribution::word_at(i, dist.horizon))] = dist.probabilities[i];
  return j;
}

int cmd_outcomes(const RunConfig& cfg) {
  const KrausSet ks = build_kraus(cfg.params, cfg.d);
  const DensityMatrix rho0 = make_initial_state(cfg.rho0, cfg.d);
  const int s = cfg.outcome_horizon;
  const OutcomeDistribution dist = exact_outcome_distribution(rho0, ks, s);
  const Target target = channel_target(cfg, rho0);
  const OutcomeDistribution ref = exact_outcome_distribution(target.state, ks, s);

  std::vector<std::int64_t> times = cfg.outcome_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::string csv = "t,tv\n";
  DensityMatrix cur = rho0;
  std::int64_t now = 0;
  for (std::int64_t t : times) {
    for (; now < t; ++now) cur = apply_channel(cur, ks);
    csv += std::to_string(t) + "," + num(tv_distance(exact_outcome_distribution(cur, ks, s), ref)) + "\n";
  }
  json j = summary_header("outcomes", cfg);
  j["horizon"] = s;
  j["distribution"] = distribution_json(dist);
  j["leakage"] = dist.leakage;
  j["reference"] = target.kind;
  j["reference_distribution"] = distribution_json(ref);
  write_atomic(out_path(cfg, "tv.csv"), csv);
  write_atomic(out_path(cfg, "outcomes.json"), j.dump(2) + "\n");
  std::cout << "outcomes: " << dist.probabilities.size() << " words at horizon " << s << "\n";
  return kExitOk;
}

int cmd_wasserstein(const RunConfig& cfg) {
  const Model model(cfg.params, cfg.d);
  const DensityMatrix rho0 = make_initial_state(cfg.rho0, cfg.d);
  const StateMeasure target = nu_inv_measure(cfg.params.theta, cfg.d);
  const TrajectoryOptions opts = trajectory_options(cfg);

  std::vector<TrajectoryState> states;
  states.reserve(cfg.trajectories);
  for (std::size_t i = 0; i < cfg.trajectories; ++i) states.push_back(init_trajectory(rho0, model, cfg.seed, i, opts));

  std::vector<std::int64_t> times = {0};
  const std::int64_t stride = cfg.checkpoint_every > 0 ? cfg.checkpoint_every : std::max<std::int64_t>(cfg.horizon, 1);
  for (std::int64_t t = stride; t < cfg.horizon; t += stride) times.push_back(t);
  if (cfg.horizon > 0) times.push_back(cfg.horizon);

  std::string csv = "t,w1,w1_with_tail\n";
  std::vector<double> curve;
  std::int64_t now = 0;
  for (std::int64_t t : times) {
    const std::int64_t steps = t - now;
    try {
      parallel_map<int>(states.size(), 0, [&](std::size_t i) {
        for (std::int64_t k = 0; k < steps; ++k) sample_step(states[i], model);
        return 0;
      });
    } catch (const TruncationOverflow& e) {
      write_error_record(cfg, "wasserstein", e);
      throw;
    }
    now = t;
    std::vector<DensityMatrix> snap;
    snap.reserve(states.size());
    for (const auto& s : states) snap.push_back(s.rho);
    const StateMeasure emp = empirical_state_measure(snap);
    const double w = wasserstein1(emp, target);
    const double wt = w + 2.0 * (emp.tail_mass + target.tail_mass);
    curve.push_back(wt);
    csv += std::to_string(t) + "," + num(w) + "," + num(wt) + "\n";
  }
  json j = summary_header("wasserstein", cfg);
  j["times"] = times;
  j["w1_with_tail"] = curve;
  j["nu_inv_tail_mass"] = target.tail_mass;
  write_atomic(out_path(cfg, "wasserstein.csv"), csv);
  write_atomic(out_path(cfg, "summary.json"), j.dump(2) + "\n");
  std::cout << "wasserstein: W1 " << num(curve.front()) << " -> " << num(curve.back()) << "\n";
  return kExitOk;
}

int cmd_resonances(const std::optional<std::string>& xi, const std::optional<std::string>& eta, long n_max,
                   const std::string& config_path) {
  DimensionlessParams p;
  if (!config_path.empty()) {
    const RunConfig cfg = parse_config(read_file(config_path));
    p = cfg.params;
  } else {
    if (!xi || !eta) throw ConfigError("/params/dimensionless", "--xi and --eta (or --config) are required");
    p = DimensionlessParams::exact(parse_rational(*xi), parse_rational(*eta), 1.0, 0.0);
  }
  const ResonanceSet rs = resonances_for(p, n_max);
  const SectorPartition part = sector_partition(rs, n_max);
  const DegeneracyReport deg = rs.regime == Regime::Injected ? degenerate_set(rs) : degenerate_set(rs, p);
  json j;
  j["format_version"] = kFormatVersion;
  if (p.exactness() == Exactness::ExactRational) {
    j["xi"] = to_string(*p.xi_exact);
    j["eta"] = to_string(*p.eta_exact);
  } else {
    j["xi"] = p.xi;
    j["eta"] = p.eta;
  }
  j["n_max"] = n_max;
  j["regime"] = to_string(rs.regime);
  json res = json::array();
  for (const auto& r : rs.entries) res.push_back({{"n", r.n}, {"k", r.k.str()}});
  j["resonances"] = res;
  json sec = json::array();
  for (const auto& s : part.sectors) sec.push_back({{"first", s.first}, {"last", s.last}, {"open_ended", s.open_ended}});
  j["sectors"] = sec;
  json pairs = json::array();
  for (const auto& [a, b] : deg.matched_sector_pairs) pairs.push_back({a, b});
  j["degeneracy"] = {{"n_set", deg.n_set}, {"degenerate", deg.degenerate}, {"matched_sector_pairs", pairs}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::vector<int>& only, const std::optional<std::string>& out) {
  VerifyOptions opts;
  std::optional<RunConfig> cfg;
  if (!config_path.empty()) {
    cfg = parse_config(read_file(config_path));
    opts.seed = cfg->seed;
  }
  opts.only = only;
  opts.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
  const auto results = run_acceptance(opts);
  int failed = 0;
  json list = json::array();
  for (const auto& r : results) {
    failed += r.passed ? 0 : 1;
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
  const std::optional<std::string> dir = out ? out : (cfg ? std::optional<std::string>(cfg->output_dir) : std::nullopt);
  if (dir) {
    json j;
    j["format_version"] = kFormatVersion;
    j["command"] = "verify";
    j["seed"] = opts.seed;
    if (cfg) j["config"] = json::parse(canonical_json(*cfg));
    j["criteria"] = list;
    j["passed"] = failed == 0;
    write_atomic((fs::path(*dir) / "verify.json").string(), j.dump(2) + "\n");
  }
  return failed ? kExitVerifyFailed : kExitOk;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"One-atom maser trajectory simulator"};
  app.name("maser");
  app.require_subcommand(1);

  Overrides sim_o, chan_o, out_o, w_o;
  bool classical = false;
  auto* sim = app.add_subcommand("simulate", "quantum or classical trajectory ensembles");
  sim_o.attach(sim);
  sim->add_flag("--classical", classical, "simulate the birth-death chain instead");
  auto* chan = app.add_subcommand("channel", "iterate the averaged channel towards its limit");
  chan_o.attach(chan);
  auto* outc = app.add_subcommand("outcomes", "exact outcome distributions and TV table");
  out_o.attach(outc);
  auto* wass = app.add_subcommand("wasserstein", "W1 between the ensemble law and nu_inv over time");
  w_o.attach(wass);

  std::optional<std::string> r_xi, r_eta;
  long r_nmax = 100;
  std::string r_config;
  auto* res = app.add_subcommand("resonances", "exact Rabi resonances, sectors and degeneracy (JSON on stdout)");
  res->add_option("--xi", r_xi, "xi as \"p/q\"");
  res->add_option("--eta", r_eta, "eta as \"p/q\"");
  res->add_option("--n-max", r_nmax, "largest level scanned")->check(CLI::PositiveNumber);
  res->add_option("--config", r_config, "take parameters from a run configuration");

  std::string v_config;
  std::vector<int> v_only;
  std::optional<std::string> v_out;
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--config", v_config, "run configuration (its seed is used)");
  ver->add_option("--only", v_only, "criterion ids")->delimiter(',');
  ver->add_option("--out,-o", v_out, "directory for verify.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (sim->parsed()) {
      const RunConfig cfg = sim_o.resolve();
      return classical ? cmd_simulate_classical(cfg) : cmd_simulate_quantum(cfg);
    }
    if (chan->parsed()) return cmd_channel(chan_o.resolve());
    if (outc->parsed()) return cmd_outcomes(out_o.resolve());
    if (wass->parsed()) return cmd_wasserstein(w_o.resolve());
    if (res->parsed()) return cmd_resonances(r_xi, r_eta, r_nmax, r_config);
    if (ver->parsed()) return cmd_verify(v_config, v_only, v_out);
  } catch (const TruncationOverflow& e) {
    std::cerr << "runtime error: truncation overflow at step " << e.step() << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cerr << app.help();
  return kExitValidation;
}

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace maser
