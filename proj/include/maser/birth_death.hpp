#pragma once

#include <array>
#include <string>
#include <vector>

#include "maser/errors.hpp"
#include "maser/fock_ops.hpp"
#include "maser/rng.hpp"

namespace maser {

/// Classical birth-death chain on {0..d}: transition probabilities of the
/// quantum trajectory restricted to Fock states.
struct BDKernel {
  std::vector<double> down;  // p(k, k-1) = p_- alpha_k
  std::vector<double> up;    // p(k, k+1) = p_+ alpha_{k+1}
  std::vector<double> stay;  // complement
  /// Per-level weights of the four letters, (--, -+, +-, ++).
  std::vector<std::array<double, 4>> letters;

  int truncation() const { return static_cast<int>(down.size()) - 1; }
};

BDKernel build_kernel(const LevelTable& table);
BDKernel build_kernel(const DimensionlessParams& params, int d);

/// Letter weights from Fock level k, without truncation.
std::array<double, 4> letter_weights(const DimensionlessParams& params, long k);

/// Gibbs weights (1 - e^{-theta}) e^{-k theta} on {0..d}; `tail_mass` is the
/// mass e^{-(d+1) theta} above d, so the weights sum to 1 - tail_mass.
struct GibbsMeasure {
  std::vector<double> weights;
  double theta = 0.0;
  double tail_mass = 0.0;
};

/// Throws NoInvariantMeasure for theta <= 0.
GibbsMeasure gibbs_measure(double theta, int d);

inline constexpr int kCemetery = -1;

struct ChainState {
  int level = 0;
  bool dead() const { return level == kCemetery; }
  friend bool operator==(const ChainState&, const ChainState&) = default;
};

using OutcomeWord = std::vector<Outcome>;

/// "-+,+-" style serialization.
std::string to_string(const OutcomeWord& word);
OutcomeWord parse_word(const std::string& text);

/// Inverse-CDF draw over four weights in the fixed order (--, -+, +-, ++).
/// Zero-weight letters are never returned.
Outcome sample_outcome(const std::array<double, 4>& weights, double u);

struct ChainStep {
  ChainState state;
  Outcome outcome = Outcome::MinusMinus;
};

/// One step of the chain. Rejects the cemetery; throws TruncationOverflow when
/// the sampled move would leave {0..d}.
ChainStep step_chain(ChainState state, const BDKernel& kernel, Rng& rng);

/// N_t(k, word): applies the shifts of `word` from level k and returns the
/// cemetery once a letter annihilates the current Fock state.
ChainState evolve_fock_word(long k, const OutcomeWord& word, const DimensionlessParams& params);

/// max_k |(mu P)(k) - mu(k)| over k < d.
double stationarity_residual(const std::vector<double>& measure, const BDKernel& kernel);

/// max_k |mu(k) up(k) - mu(k+1) down(k+1)| over k < d.
double detailed_balance_residual(const std::vector<double>& measure, const BDKernel& kernel);

}  // namespace maser
