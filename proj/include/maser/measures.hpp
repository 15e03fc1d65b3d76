#pragma once

#include <string>
#include <vector>

#include "maser/birth_death.hpp"
#include "maser/fock_ops.hpp"

namespace maser {

/// Law of the first `horizon` outcomes. Entry w is the probability of the word
/// whose base-4 digits (first letter most significant) are the letter indices.
struct OutcomeDistribution {
  int horizon = 0;
  std::vector<double> probabilities;
  double leakage = 0.0;  // 1 - total mass (truncation)

  static OutcomeWord word_at(std::size_t index, int horizon);
  static std::size_t index_of(const OutcomeWord& word);
};

inline constexpr int kMaxOutcomeHorizon = 10;

/// P(w_1..w_s | rho) = Tr(W rho W*), enumerated depth-first over all 4^s words.
/// Only diag(rho) enters since W*W is diagonal. Throws for s > 10.
OutcomeDistribution exact_outcome_distribution(const DensityMatrix& rho, const KrausSet& kraus, int horizon);

/// Law of outcomes t+1..t+s: exact_outcome_distribution(L^t(rho), s).
OutcomeDistribution shifted_distribution(const DensityMatrix& rho, const KrausSet& kraus, std::int64_t t, int horizon);

/// Total variation as half the l1 distance on atoms. With this convention the
/// Lipschitz bound reads TV(P^rho, P^sigma) <= ||rho - sigma||_1 / 2.
double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// Finitely supported probability measure on states. `fock[i]` >= 0 marks an
/// atom at |fock[i]><fock[i]| (its matrix may then be left empty).
struct StateMeasure {
  std::vector<Eigen::MatrixXcd> support;
  std::vector<int> fock;
  std::vector<double> weights;
  int d = 0;
  double tail_mass = 0.0;  // mass dropped by truncation

  std::size_t size() const { return weights.size(); }
  Eigen::MatrixXcd atom(std::size_t i) const;
  Eigen::MatrixXcd barycenter() const;
};

/// Gibbs-weighted Fock atoms on {0..d}; weights renormalized, dropped mass kept in tail_mass.
StateMeasure nu_inv_measure(double theta, int d);

/// One step of the state-valued Markov kernel: every atom x splits into the
/// four posteriors V_y x V_y*/p_y with weights p_y; identical Fock atoms merge.
StateMeasure push_forward(const StateMeasure& nu, const KrausSet& kraus);

/// Uniform weights over the snapshots, merging bit-identical states and
/// labelling exact Fock projectors.
StateMeasure empirical_state_measure(const std::vector<DensityMatrix>& ensemble);

/// Exact W1 with trace-norm ground cost (network simplex on the cost matrix).
double wasserstein1(const StateMeasure& a, const StateMeasure& b);

/// Trace-norm cost matrix between the supports.
Eigen::MatrixXd ground_cost(const StateMeasure& a, const StateMeasure& b);

/// W1 plus the conservative truncation penalty 2 (tail_a + tail_b).
double wasserstein1_with_tail(const StateMeasure& a, const StateMeasure& b);

/// Index of the Fock level if m is exactly |k><k|, else -1.
int exact_fock_label(const Eigen::MatrixXcd& m);

}  // namespace maser
