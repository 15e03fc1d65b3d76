#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "maser/model.hpp"
#include "maser/rng.hpp"

namespace maser {

/// Diagonal of the purification martingale M_t: a probability vector over
/// levels. Entry n is exactly 0 once the outcome record has killed |n>.
struct MartingaleVector {
  std::vector<double> probabilities;
};

struct TrajectoryOptions {
  double leakage_budget = 1e-9;
  int guard = 8;                     // required headroom above the initial support
  std::size_t history_capacity = 0;  // ring buffer length; 0 keeps no history
};

struct TrajectoryState {
  std::int64_t t = 0;
  DensityMatrix rho;  // normalized posterior state
  int band = 0;       // bandwidth of rho; no update widens it
  FactoredOperator w; // accumulated W_t, rescaled
  MartingaleVector m;
  std::deque<Outcome> history;
  std::size_t history_capacity = 0;
  double leakage_budget = 1e-9;
  Rng rng;

  TrajectoryState(Rng r) : rng(std::move(r)) {}
};

struct PurificationDiagnostics {
  std::int64_t t = 0;
  double m_max = 0.0;
  int n_hat = 0;
  double gap = 0.0;        // ||rho_t - |N_t(n_hat)><N_t(n_hat)| ||_1
  double gap_bound = 0.0;  // 2 sqrt(1 - <N|rho_t|N>)
  double purity = 0.0;
};

/// Checks rho0 and the truncation guard, and starts M_0 at the Gibbs weights.
/// Throws std::invalid_argument on guard violations, NoInvariantMeasure for theta <= 0.
TrajectoryState init_trajectory(const DensityMatrix& rho0, const Model& model, std::uint64_t seed,
                                std::uint64_t stream = 0, const TrajectoryOptions& opts = {});

/// Samples y with probability Tr(V_y rho_t V_y*) and updates rho_t, W_t and M_t.
/// Throws TruncationOverflow when accumulated leakage exceeds the budget.
Outcome sample_step(TrajectoryState& state, const Model& model);

/// Same update with the outcome forced (it must have positive probability).
void apply_outcome(TrajectoryState& state, const Model& model, Outcome y);

/// l1 distance between M_t and the one-step conditional mean of M_{t+1}
/// under the Gibbs reference measure; the weights come from W_t directly.
double martingale_residual(const TrajectoryState& state, const Model& model);

struct NInfinityEstimate {
  int n_hat = 0;
  double confidence = 0.0;
};

/// argmax of m, ties toward the smaller level.
NInfinityEstimate estimate_n_infinity(const MartingaleVector& m);

/// Level N_t(n) reached from |n> by the record so far, or kCemetery.
int evolved_level(const TrajectoryState& state, int n);

/// Trace distance from rho_t to the evolved Fock projector of n_hat; 2 when
/// that level has been killed.
double purification_gap(const TrajectoryState& state);

PurificationDiagnostics diagnose(const TrajectoryState& state);

struct TrajectoryRun {
  std::vector<PurificationDiagnostics> checkpoints;  // t = 0, every stride, and T
  TrajectoryState final_state;
};

TrajectoryRun run_trajectory(const DensityMatrix& rho0, const Model& model, std::int64_t horizon,
                             std::uint64_t seed, std::uint64_t stream, std::int64_t checkpoint_every,
                             const TrajectoryOptions& opts = {});

}  // namespace maser
