#include "maser/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "maser/birth_death.hpp"
#include "maser/channel.hpp"
#include "maser/ensemble.hpp"
#include "maser/measures.hpp"
#include "maser/model.hpp"
#include "maser/oracles/dense_kraus.hpp"
#include "maser/oracles/dense_lp.hpp"
#include "maser/oracles/resonance_scan.hpp"
#include "maser/resonance.hpp"
#include "maser/states.hpp"
#include "maser/transport.hpp"

namespace maser {

namespace {

constexpr double kPi = std::numbers::pi;

// Baseline non-resonant point used by several criteria.
DimensionlessParams baseline() { return DimensionlessParams::exact(Rational(1, 2), Rational(1, 3), std::log(2.0), 1.0); }
constexpr int kBaselineD = 64;

DimensionlessParams degenerate_params() { return DimensionlessParams::exact(Rational(24), Rational(1), std::log(2.0), 0.7); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Random test inputs. Every stream is derived from the master seed.
DimensionlessParams random_params(Rng& rng, bool positive_theta) {
  const double xi = 0.05 + 4.95 * rng.uniform();
  const double eta = 5.0 * rng.uniform();
  const double theta = positive_theta ? 0.1 + 2.9 * rng.uniform() : -3.0 + 6.0 * rng.uniform();
  return DimensionlessParams::floating(xi, eta, theta, 2.0 * kPi * rng.uniform());
}

// G G* / Tr on levels [0, support], embedded in {0..d}.
Eigen::MatrixXcd random_density(Rng& rng, int support, int d) {
  const int k = support + 1;
  Eigen::MatrixXcd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  Eigen::MatrixXcd r = g * g.adjoint();
  r /= r.trace().real();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  out.topLeftCorner(k, k) = r;
  return out;
}

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double nb = b.norm();
  return (a - b).norm() / (nb > 0.0 ? nb : 1.0);
}

double independent_alpha(double xi, double eta, long k) {
  const double x2 = xi * static_cast<double>(k) + eta;
  if (k == 0 || x2 == 0.0) return 0.0;
  const double s = std::sin(kPi * std::sqrt(x2));
  return s * s * xi * static_cast<double>(k) / x2;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Context {
  const VerifyOptions& opts;
  // The 200-trajectory baseline ensemble is shared by criteria 6 and 10.
  std::optional<std::vector<TrajectoryRun>> baseline_runs;
  std::optional<Model> baseline_model;

  const Model& model() {
    if (!baseline_model) baseline_model.emplace(baseline(), kBaselineD);
    return *baseline_model;
  }
  DensityMatrix baseline_rho0() { return thermal_state(std::log(2.0), kBaselineD); }
  const std::vector<TrajectoryRun>& runs() {
    if (!baseline_runs) {
      EnsembleSpec spec;
      spec.horizon = 5000;
      spec.trajectories = 200;
      spec.master_seed = opts.seed;
      spec.threads = opts.threads;
      baseline_runs = run_ensemble(baseline_rho0(), model(), spec);
    }
    return *baseline_runs;
  }
};

// ---------------------------------------------------------------------------

CriterionResult c1_stochasticity(Context& ctx) {
  Rng rng(ctx.opts.seed, 101);
  double worst = 0.0;
  double worst_dense = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DimensionlessParams p = random_params(rng, false);
    const int d = 40;
    worst = std::max(worst, verify_stochasticity(build_kraus(p, d)).max_interior_deviation);
    const auto gram = oracle::dense_gram(oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, d));
    for (int n = 0; n < d; ++n) worst_dense = std::max(worst_dense, std::abs(gram(n, n) - 1.0));
  }
  return {1, "stochasticity", worst <= 1e-12 && worst_dense <= 1e-12,
          "max dev " + fmt("%.2e", worst) + ", dense oracle " + fmt("%.2e", worst_dense)};
}

CriterionResult c2_kraus_fock(Context&) {
  double worst = 0.0;
  bool images_ok = true;
  const int d = 40;
  for (double xi : {0.1, 0.5, 1.3, 2.7, 24.0}) {
    for (double eta : {0.0, 1.0 / 3.0, 1.0, 2.5}) {
      for (double theta : {-1.0, std::log(2.0), 2.0}) {
        const DimensionlessParams p = DimensionlessParams::floating(xi, eta, theta, 0.3);
        const KrausSet ks = build_kraus(p, d);
        const double pm = 1.0 / (1.0 + std::exp(-theta));
        const double pp = 1.0 / (1.0 + std::exp(theta));
        for (int k = 0; k < d; ++k) {
          const double ak = independent_alpha(xi, eta, k);
          const double ak1 = independent_alpha(xi, eta, k + 1);
          const std::array<double, 4> expect = {pm * (1.0 - ak), pm * ak, pp * ak1, pp * (1.0 - ak1)};
          const DensityMatrix fk = DensityMatrix::fock(d, k);
          for (Outcome y : kOutcomes) {
            const Applied a = apply_to_density(ks[y], fk);
            worst = std::max(worst, std::abs(a.weight - expect[index_of(y)]));
            if (a.weight > 0.0) {
              const int target = k + shift_of(y);
              Eigen::MatrixXcd rest = a.rho.mat;
              rest(target, target) = 0.0;
              if (rest.cwiseAbs().maxCoeff() != 0.0) images_ok = false;
            }
          }
        }
      }
    }
  }
  return {2, "Kraus-Fock identities", worst <= 1e-12 && images_ok,
          "max |weight - formula| " + fmt("%.2e", worst) + (images_ok ? ", images are Fock" : ", non-Fock image")};
}

CriterionResult c3_factored_dense(Context& ctx) {
  Rng rng(ctx.opts.seed, 103);
  const int d = 32;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DimensionlessParams p = random_params(rng, true);
    const KrausSet ks = build_kraus(p, d);
    const auto dk = oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, d);
    const int len = 1 + static_cast<int>(rng.uniform() * 8.0);
    DensityMatrix rho;
    rho.mat = random_density(rng, d, d);
    Eigen::MatrixXcd dense_w = Eigen::MatrixXcd::Identity(d + 1, d + 1);
    FactoredOperator w = FactoredOperator::identity(d);
    DensityMatrix evolved = rho;
    for (int k = 0; k < len; ++k) {
      const Outcome y = kOutcomes[std::min<std::size_t>(3, static_cast<std::size_t>(rng.uniform() * 4.0))];
      dense_w = dk.ops[index_of(y)] * dense_w;
      w = compose_factored(w, ks[y]);
      evolved = apply_to_density(ks[y], evolved).rho;
    }
    const Eigen::MatrixXcd dense_rho = dense_w * rho.mat * dense_w.adjoint();
    worst = std::max({worst, rel_err(w.dense(), dense_w), rel_err(evolved.mat, dense_rho),
                      rel_err(apply_to_density(w, rho).rho.mat, dense_rho)});
  }
  return {3, "factored vs dense", worst <= 1e-10, "max relative error " + fmt("%.2e", worst)};
}

CriterionResult c4_gibbs(Context&) {
  double db = 0.0;
  double st = 0.0;
  double norm = 0.0;
  for (double theta : {std::log(2.0), 0.5, 1.0, 3.0}) {
    DimensionlessParams p = baseline();
    p.theta = theta;
    const BDKernel k = build_kernel(p, kBaselineD);
    const GibbsMeasure g = gibbs_measure(theta, kBaselineD);
    db = std::max(db, detailed_balance_residual(g.weights, k));
    st = std::max(st, stationarity_residual(g.weights, k));
    double total = g.tail_mass;
    for (double w : g.weights) total += w;
    norm = std::max(norm, std::abs(total - 1.0));
  }
  return {4, "Gibbs invariance", db <= 1e-13 && st <= 1e-13 && norm <= 1e-13,
          "detailed balance " + fmt("%.2e", db) + ", stationarity " + fmt("%.2e", st) + ", mass " + fmt("%.2e", norm)};
}

CriterionResult c5_martingale(Context& ctx) {
  const Model& model = ctx.model();
  const auto worst_per = parallel_map<double>(100, ctx.opts.threads, [&](std::size_t i) {
    Rng init(ctx.opts.seed, 5000 + i);
    DensityMatrix rho0;
    rho0.mat = random_density(init, 5, kBaselineD);
    TrajectoryState s = init_trajectory(rho0, model, ctx.opts.seed, 500 + i);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      worst = std::max(worst, martingale_residual(s, model));
      sample_step(s, model);
    }
    return worst;
  });
  const double worst = *std::max_element(worst_per.begin(), worst_per.end());
  return {5, "martingale identity", worst <= 1e-12, "max one-step residual " + fmt("%.2e", worst)};
}

CriterionResult c6_purification(Context& ctx) {
  std::vector<double> gaps;
  std::vector<double> mmax;
  for (const auto& run : ctx.runs()) {
    gaps.push_back(run.checkpoints.back().gap);
    mmax.push_back(run.checkpoints.back().m_max);
  }
  const double g = median(gaps);
  const double m = median(mmax);
  return {6, "purification", g <= 0.05 && m >= 0.95,
          "median gap " + fmt("%.3e", g) + ", median m_max " + fmt("%.6f", m)};
}

CriterionResult c7_law(Context& ctx) {
  const Model& model = ctx.model();
  const DensityMatrix rho0 = make_initial_state("mixture:0:0.5,1:0.3,3:0.2", kBaselineD);
  EnsembleSpec spec;
  spec.horizon = 5000;
  spec.trajectories = 500;
  spec.master_seed = ctx.opts.seed;
  spec.threads = ctx.opts.threads;
  const auto runs = run_ensemble(rho0, model, spec);
  std::map<int, int> counts;
  for (const auto& r : runs) ++counts[r.checkpoints.back().n_hat];
  const std::map<int, double> law = {{0, 0.5}, {1, 0.3}, {3, 0.2}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& [n, c] : counts) {
    const auto it = law.find(n);
    if (it == law.end()) {
      ok = false;
      os << "n=" << n << ":" << c << "(unexpected) ";
      continue;
    }
  }
  for (const auto& [n, p] : law) {
    const double expect = 500.0 * p;
    const double sigma = std::sqrt(500.0 * p * (1.0 - p));
    const int c = counts.count(n) ? counts[n] : 0;
    if (std::abs(c - expect) > 3.0 * sigma) ok = false;
    os << "n=" << n << ":" << c << "/" << expect << " ";
  }
  return {7, "law of n_inf", ok, os.str()};
}

CriterionResult c8_mixing(Context& ctx) {
  const Model& model = ctx.model();
  const DensityMatrix rho = DensityMatrix::fock(kBaselineD, 10);
  const OutcomeDistribution target = exact_outcome_distribution(invariant_state(model.params.theta, kBaselineD), model.kraus, 4);
  std::vector<double> tv;
  DensityMatrix cur = rho;
  std::int64_t t_now = 0;
  for (std::int64_t t : {0, 10, 100, 1000}) {
    for (; t_now < t; ++t_now) cur = apply_channel(cur, model.kraus);
    tv.push_back(tv_distance(exact_outcome_distribution(cur, model.kraus, 4), target));
  }
  bool ok = tv.back() <= 0.02;
  std::ostringstream os;
  for (std::size_t i = 0; i < tv.size(); ++i) {
    if (i > 0 && !(tv[i] < tv[i - 1])) ok = false;
    os << (i ? ", " : "TV ") << fmt("%.3e", tv[i]);
  }
  return {8, "outcome-law mixing", ok, os.str()};
}

CriterionResult c9_lipschitz(Context& ctx) {
  Rng rng(ctx.opts.seed, 109);
  // Support 0..5 plus at most 6 raises stays strictly below d: no leakage.
  const int d = 12;
  double worst = -1.0;
  for (int i = 0; i < 100; ++i) {
    const DimensionlessParams p = random_params(rng, true);
    const KrausSet ks = build_kraus(p, d);
    DensityMatrix a, b;
    a.mat = random_density(rng, 5, d);
    b.mat = random_density(rng, 5, d);
    const double bound = 0.5 * trace_norm(a.mat - b.mat);
    for (int s = 1; s <= 6; ++s) {
      const double tv = tv_distance(exact_outcome_distribution(a, ks, s), exact_outcome_distribution(b, ks, s));
      worst = std::max(worst, tv - bound);
    }
  }
  return {9, "Lipschitz TV bound", worst <= 1e-12, "max (TV - bound) " + fmt("%.2e", worst)};
}

CriterionResult c10_wasserstein(Context& ctx) {
  // Network simplex against the dense LP.
  Rng rng(ctx.opts.seed, 110);
  double lp_err = 0.0;
  for (int i = 0; i < 40; ++i) {
    const int m = 1 + static_cast<int>(rng.uniform() * 30.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 30.0);
    std::vector<double> a(m), b(n);
    for (double& v : a) v = rng.uniform();
    for (double& v : b) v = rng.uniform();
    double sa = 0.0, sb = 0.0;
    for (double v : a) sa += v;
    for (double v : b) sb += v;
    for (double& v : a) v /= sa;
    for (double& v : b) v /= sb;
    Eigen::MatrixXd c(m, n);
    const bool integral = i % 2 == 1;  // ties and degenerate pivots
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < n; ++s) c(r, s) = integral ? std::floor(3.0 * rng.uniform()) : 2.0 * rng.uniform();
    const double ns = solve_transport(a, b, c).cost;
    const double lp = oracle::transport_cost_lp(a, b, c);
    lp_err = std::max(lp_err, std::abs(ns - lp));
  }

  const Model& model = ctx.model();
  const StateMeasure target = nu_inv_measure(model.params.theta, kBaselineD);
  StateMeasure start;
  start.d = kBaselineD;
  start.support.push_back(ctx.baseline_rho0().mat);
  start.fock.push_back(-1);
  start.weights.push_back(1.0);
  const double w0 = wasserstein1_with_tail(start, target);
  std::vector<DensityMatrix> finals;
  for (const auto& r : ctx.runs()) finals.push_back(r.final_state.rho);
  const double wT = wasserstein1_with_tail(empirical_state_measure(finals), target);
  return {10, "Wasserstein proxy", lp_err <= 1e-9 && wT < w0 && wT <= 0.1,
          "W1(t=0) " + fmt("%.4f", w0) + ", W1(T) " + fmt("%.4f", wT) + ", OT vs LP " + fmt("%.1e", lp_err)};
}

CriterionResult c11_degenerate(Context& ctx) {
  const Model model(degenerate_params(), 16);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(17);
  w(0) = 0.5;
  w(1) = 0.5;
  const DensityMatrix rho0 = DensityMatrix::diagonal(w);
  const auto per = parallel_map<int>(8, ctx.opts.threads, [&](std::size_t i) {
    TrajectoryState s = init_trajectory(rho0, model, ctx.opts.seed, 1100 + i);
    int bad = diagnose(s).gap == 1.0 ? 0 : 1;
    for (int t = 1; t <= 10000; ++t) {
      const Outcome y = sample_step(s, model);
      if (y != Outcome::MinusMinus && y != Outcome::PlusPlus) ++bad;
      if (purification_gap(s) != 1.0) ++bad;
    }
    return bad;
  });
  int bad = 0;
  for (int b : per) bad += b;
  return {11, "degenerate non-purification", bad == 0,
          std::to_string(per.size()) + " trajectories x 10^4 steps, violations " + std::to_string(bad)};
}

CriterionResult c12_resonant_limit(Context&) {
  const int d = 24;  // 25 is a resonance, so every sector in {0..24} is closed
  const DimensionlessParams p = DimensionlessParams::exact(Rational(1), Rational(0), std::log(2.0), 0.4);
  const KrausSet ks = build_kraus(p, d);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d + 1);
  psi(2) = 1.0;
  psi(6) = 1.0;
  const DensityMatrix rho0 = DensityMatrix::pure(psi);
  const SectorPartition part = sector_partition(find_resonances(p, d), d);
  const DensityMatrix limit = resonant_limit(rho0, part, p.theta);
  // Run to a fixed large t rather than stopping at the first hit.
  const ChannelReport rep = iterate_channel(rho0, ks, limit, 0.0, 10000, 100);
  const double last = rep.distances.back();
  return {12, "resonant sector limit", last <= 1e-3,
          "||L^t rho - limit||_1 = " + fmt("%.2e", last) + " at t = " + std::to_string(rep.times.back())};
}

CriterionResult c13_phase(Context&) {
  const DimensionlessParams p = degenerate_params();
  const int d = 16;
  const KrausSet ks = build_kraus(p, d);
  const auto dk = oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, d);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d + 1);
  psi(0) = 1.0;
  psi(1) = 1.0;
  DensityMatrix rho = DensityMatrix::pure(psi);
  Eigen::MatrixXcd dense = rho.mat;
  const double expected = std::remainder(-(p.phi + kPi * p.xi), 2.0 * kPi);
  double worst_phase = 0.0;
  double worst_dense = 0.0;
  double worst_mod = 0.0;
  for (int t = 1; t <= 200; ++t) {
    const cplx before = rho.mat(1, 0);
    rho = apply_channel(rho, ks);
    dense = oracle::dense_channel(dk, dense);
    const double step = std::arg(rho.mat(1, 0) / before);
    worst_phase = std::max(worst_phase, std::abs(std::remainder(step - expected, 2.0 * kPi)));
    worst_dense = std::max(worst_dense, std::abs(rho.mat(1, 0) - dense(1, 0)));
    worst_mod = std::max(worst_mod, std::abs(std::abs(rho.mat(1, 0)) - 0.5));
  }
  return {13, "degenerate coherence phase", worst_phase <= 1e-10 && worst_dense <= 1e-10 && worst_mod <= 1e-10,
          "phase error " + fmt("%.2e", worst_phase) + ", vs dense " + fmt("%.2e", worst_dense) + ", |coherence|-1/2 " +
              fmt("%.2e", worst_mod)};
}

CriterionResult c14_resonances(Context&) {
  const DimensionlessParams p = DimensionlessParams::exact(Rational(24), Rational(1), 1.0, 0.0);
  const ResonanceSet rs = find_resonances(p, 30);
  const std::vector<long> expected = {1, 2, 5, 7, 12, 15, 22, 26};
  const DegeneracyReport deg = degenerate_set(rs);
  bool ok = rs.levels() == expected && oracle::resonances_by_k(24, 1, 30) == expected &&
            deg.n_set == std::vector<long>{0, 1} && deg.degenerate;
  int grid = 0;
  int tuned_failures = 0;
  for (long xn = 1; xn <= 60; ++xn) {
    for (long xd = 1; xd <= 6; ++xd) {
      const auto q = DimensionlessParams::exact(Rational(xn, xd), Rational(0), 1.0, 0.0);
      const auto levels = find_resonances(q, 400).levels();
      const Rational xi(xn, xd);
      const long num = static_cast<long>(boost::multiprecision::numerator(xi));
      const long den = static_cast<long>(boost::multiprecision::denominator(xi));
      if (levels != oracle::resonances_by_k(num, den, 0, 1, 400) || !oracle::no_consecutive(levels)) ++tuned_failures;
      ++grid;
    }
  }
  ok = ok && tuned_failures == 0;
  std::ostringstream os;
  os << "R(24,1) = {";
  for (std::size_t i = 0; i < rs.entries.size(); ++i) os << (i ? "," : "") << rs.entries[i].n;
  os << "}, N = {";
  for (std::size_t i = 0; i < deg.n_set.size(); ++i) os << (i ? "," : "") << deg.n_set[i];
  os << "}, tuned grid " << grid << " points, failures " << tuned_failures;
  return {14, "resonance arithmetic", ok, os.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  using Fn = CriterionResult (*)(Context&);
  const std::array<Fn, kCriterionCount> table = {c1_stochasticity, c2_kraus_fock,    c3_factored_dense, c4_gibbs,
                                                 c5_martingale,    c6_purification,  c7_law,            c8_mixing,
                                                 c9_lipschitz,     c10_wasserstein,  c11_degenerate,    c12_resonant_limit,
                                                 c13_phase,        c14_resonances};
  Context ctx{opts, std::nullopt, std::nullopt};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = table[static_cast<std::size_t>(id - 1)](ctx);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d  %-28s (%7.2f s)  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace maser
