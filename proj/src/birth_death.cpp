#include "maser/birth_death.hpp"

#include <cmath>
#include <sstream>

namespace maser {

BDKernel build_kernel(const LevelTable& table) {
  const int d = table.truncation();
  const AtomProbabilities at = atomic_probabilities(table.params().theta);
  BDKernel k;
  const auto size = static_cast<std::size_t>(d) + 1;
  k.down.resize(size);
  k.up.resize(size);
  k.stay.resize(size);
  k.letters.resize(size);
  for (int n = 0; n <= d; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double a0 = table.alpha(n);
    const double a1 = table.alpha(n + 1);
    k.down[i] = at.p_minus * a0;
    k.up[i] = at.p_plus * a1;
    k.stay[i] = 1.0 - k.down[i] - k.up[i];
    k.letters[i] = {at.p_minus * (1.0 - a0), k.down[i], k.up[i], at.p_plus * (1.0 - a1)};
  }
  return k;
}

BDKernel build_kernel(const DimensionlessParams& params, int d) { return build_kernel(LevelTable(params, d)); }

std::array<double, 4> letter_weights(const DimensionlessParams& params, long k) {
  const AtomProbabilities at = atomic_probabilities(params.theta);
  const double a0 = eval_alpha(params, k);
  const double a1 = eval_alpha(params, k + 1);
  return {at.p_minus * (1.0 - a0), at.p_minus * a0, at.p_plus * a1, at.p_plus * (1.0 - a1)};
}

GibbsMeasure gibbs_measure(double theta, int d) {
  if (!(theta > 0.0)) throw NoInvariantMeasure("theta <= 0: there is no invariant probability measure");
  GibbsMeasure g;
  g.theta = theta;
  const double norm = -std::expm1(-theta);
  g.weights.resize(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) g.weights[static_cast<std::size_t>(k)] = norm * std::exp(-theta * k);
  g.tail_mass = std::exp(-theta * (d + 1));
  return g;
}

std::string to_string(const OutcomeWord& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ',';
    out += label(word[i]);
  }
  return out;
}

OutcomeWord parse_word(const std::string& text) {
  OutcomeWord w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) w.push_back(parse_outcome(tok));
  return w;
}

Outcome sample_outcome(const std::array<double, 4>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = u * total;
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t y = 0; y < 4; ++y) {
    if (!(weights[y] > 0.0)) continue;
    cum += weights[y];
    last = y;
    if (target < cum) return kOutcomes[y];
  }
  return kOutcomes[last];
}

ChainStep step_chain(ChainState state, const BDKernel& kernel, Rng& rng) {
  if (state.dead() || state.level < 0 || state.level > kernel.truncation())
    throw std::invalid_argument("step_chain: state outside {0..d}");
  const auto& w = kernel.letters[static_cast<std::size_t>(state.level)];
  ChainStep out;
  out.outcome = sample_outcome(w, rng.uniform());
  out.state.level = state.level + shift_of(out.outcome);
  if (out.state.level > kernel.truncation())
    throw TruncationOverflow(-1, 0.0, "classical chain left the truncated space");
  return out;
}

ChainState evolve_fock_word(long k, const OutcomeWord& word, const DimensionlessParams& params) {
  if (k < 0) throw std::invalid_argument("evolve_fock_word: negative level");
  long level = k;
  for (Outcome y : word) {
    if (letter_weights(params, level)[index_of(y)] == 0.0) return {kCemetery};
    level += shift_of(y);
  }
  return {static_cast<int>(level)};
}

double stationarity_residual(const std::vector<double>& mu, const BDKernel& kernel) {
  const int d = kernel.truncation();
  if (static_cast<int>(mu.size()) != d + 1) throw std::invalid_argument("stationarity_residual: size mismatch");
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    const auto i = static_cast<std::size_t>(k);
    double next = mu[i] * kernel.stay[i] + mu[i + 1] * kernel.down[i + 1];
    if (k > 0) next += mu[i - 1] * kernel.up[i - 1];
    worst = std::max(worst, std::abs(next - mu[i]));
  }
  return worst;
}

double detailed_balance_residual(const std::vector<double>& mu, const BDKernel& kernel) {
  const int d = kernel.truncation();
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    const auto i = static_cast<std::size_t>(k);
    worst = std::max(worst, std::abs(mu[i] * kernel.up[i] - mu[i + 1] * kernel.down[i + 1]));
  }
  return worst;
}

}  // namespace maser
