#include "maser/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maser/errors.hpp"
#include "maser/states.hpp"

namespace maser {

TrajectoryState init_trajectory(const DensityMatrix& rho0, const Model& model, std::uint64_t seed,
                                std::uint64_t stream, const TrajectoryOptions& opts) {
  if (rho0.truncation() != model.d) throw std::invalid_argument("initial state truncation differs from model");
  rho0.validate();
  if (!model.gibbs) throw NoInvariantMeasure("trajectory engine needs theta > 0 for the Gibbs reference");
  const int support = effective_support(rho0, opts.leakage_budget);
  if (support + opts.guard > model.d)
    throw std::invalid_argument("guard rule violated: initial support " + std::to_string(support) + " + guard " +
                                std::to_string(opts.guard) + " exceeds truncation " + std::to_string(model.d));

  TrajectoryState s{Rng(seed, stream)};
  s.rho = rho0;
  s.band = std::max(0, bandwidth(rho0.mat));
  s.w = FactoredOperator::identity(model.d);
  const auto& g = model.gibbs->weights;
  double total = 0.0;
  for (double v : g) total += v;
  s.m.probabilities.resize(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) s.m.probabilities[n] = g[n] / total;
  s.history_capacity = opts.history_capacity;
  s.leakage_budget = opts.leakage_budget;
  return s;
}

void apply_outcome(TrajectoryState& s, const Model& model, Outcome y) {
  const FactoredOperator& v = model.kraus[y];
  Applied next = apply_to_density(v, s.rho, s.band);
  if (!(next.weight > 0.0)) throw std::invalid_argument("apply_outcome: outcome has zero probability");
  next.rho.mat /= next.weight;
  s.rho = std::move(next.rho);

  const int d = model.d;
  const int shift = s.w.shift;
  auto& m = s.m.probabilities;
  double total = 0.0;
  for (int n = 0; n <= d; ++n) {
    double& mn = m[static_cast<std::size_t>(n)];
    if (mn == 0.0) continue;
    const int level = n + shift;
    mn = (level < 0 || level > d) ? 0.0 : mn * v.weight(level);
    total += mn;
  }
  if (!(total > 0.0)) throw std::runtime_error("martingale vector vanished");
  for (double& mn : m) mn /= total;

  s.w = compose_factored(s.w, v);
  if (s.history_capacity > 0) {
    s.history.push_back(y);
    if (s.history.size() > s.history_capacity) s.history.pop_front();
  }
  ++s.t;
}

Outcome sample_step(TrajectoryState& s, const Model& model) {
  const auto weights = outcome_weights(model.kraus, s.rho.mat);
  const double total = weights[0] + weights[1] + weights[2] + weights[3];
  s.rho.leakage += std::max(0.0, s.rho.trace() - total);
  if (s.rho.leakage > s.leakage_budget)
    throw TruncationOverflow(s.t, s.rho.leakage,
                             "leakage " + std::to_string(s.rho.leakage) + " exceeded budget at step " +
                                 std::to_string(s.t));
  const Outcome y = sample_outcome(weights, s.rng.uniform());
  apply_outcome(s, model, y);
  return y;
}

double martingale_residual(const TrajectoryState& s, const Model& model) {
  const int d = model.d;
  const auto& g = model.gibbs->weights;
  const auto& m = s.m.probabilities;
  const int shift = s.w.shift;

  // Reference M_t from W_t: m_W(n) ∝ g(n) |W_t|n>|^2.
  std::vector<double> m_w(m.size(), 0.0);
  double z = 0.0;
  for (int n = 0; n <= d; ++n) {
    const auto i = static_cast<std::size_t>(n);
    m_w[i] = g[i] * s.w.weight(static_cast<int>(i));
    z += m_w[i];
  }
  if (!(z > 0.0)) return std::numeric_limits<double>::infinity();
  for (double& v : m_w) v /= z;

  std::vector<double> mean(m.size(), 0.0);
  for (Outcome y : kOutcomes) {
    const auto& op = model.kraus[y];
    double w_y = 0.0;
    double norm_y = 0.0;
    std::vector<double> next(m.size(), 0.0);
    for (int n = 0; n <= d; ++n) {
      const int level = n + shift;
      if (level < 0 || level > d) continue;
      const auto i = static_cast<std::size_t>(n);
      const double a2 = op.weight(level);
      w_y += m_w[i] * a2;
      next[i] = m[i] * a2;
      norm_y += next[i];
    }
    if (!(w_y > 0.0) || !(norm_y > 0.0)) continue;
    for (std::size_t i = 0; i < m.size(); ++i) mean[i] += w_y * next[i] / norm_y;
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) residual += std::abs(mean[i] - m[i]);
  return residual;
}

NInfinityEstimate estimate_n_infinity(const MartingaleVector& m) {
  NInfinityEstimate e;
  const auto& p = m.probabilities;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] > e.confidence) {
      e.confidence = p[n];
      e.n_hat = static_cast<int>(n);
    }
  }
  return e;
}

int evolved_level(const TrajectoryState& s, int n) {
  const auto img = s.w.image_of(n);
  return img ? *img : kCemetery;
}

double purification_gap(const TrajectoryState& s) {
  const int level = evolved_level(s, estimate_n_infinity(s.m).n_hat);
  if (level == kCemetery) return 2.0;
  Eigen::MatrixXcd diff = s.rho.mat;
  diff(level, level) -= 1.0;
  return trace_norm(diff);
}

PurificationDiagnostics diagnose(const TrajectoryState& s) {
  PurificationDiagnostics out;
  out.t = s.t;
  const auto est = estimate_n_infinity(s.m);
  out.n_hat = est.n_hat;
  out.m_max = est.confidence;
  out.gap = purification_gap(s);
  const int level = evolved_level(s, est.n_hat);
  if (level == kCemetery) {
    out.gap_bound = 2.0;
  } else {
    out.gap_bound = 2.0 * std::sqrt(std::max(0.0, 1.0 - s.rho.mat(level, level).real()));
  }
  out.purity = s.rho.mat.squaredNorm();
  return out;
}

TrajectoryRun run_trajectory(const DensityMatrix& rho0, const Model& model, std::int64_t horizon,
                             std::uint64_t seed, std::uint64_t stream, std::int64_t checkpoint_every,
                             const TrajectoryOptions& opts) {
  TrajectoryRun run{{}, init_trajectory(rho0, model, seed, stream, opts)};
  auto& s = run.final_state;
  run.checkpoints.push_back(diagnose(s));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    sample_step(s, model);
    if ((checkpoint_every > 0 && t % checkpoint_every == 0) || t == horizon) run.checkpoints.push_back(diagnose(s));
  }
  return run;
}

}  // namespace maser
