#include "maser/measures.hpp"

#include <cmath>
#include <map>

#include "maser/channel.hpp"
#include "maser/ensemble.hpp"
#include "maser/transport.hpp"

namespace maser {

OutcomeWord OutcomeDistribution::word_at(std::size_t index, int horizon) {
  OutcomeWord w(static_cast<std::size_t>(horizon));
  for (int k = horizon - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = kOutcomes[index % 4];
    index /= 4;
  }
  return w;
}

std::size_t OutcomeDistribution::index_of(const OutcomeWord& word) {
  std::size_t idx = 0;
  for (Outcome y : word) idx = idx * 4 + maser::index_of(y);
  return idx;
}

namespace {

void enumerate(const FactoredOperator& w, const Eigen::VectorXd& diag, const KrausSet& kraus, int depth,
               int horizon, std::size_t prefix, std::vector<double>& out) {
  if (depth == horizon) {
    double p = 0.0;
    for (Eigen::Index n = 0; n < diag.size(); ++n) p += diag(n) * w.weight(static_cast<int>(n));
    out[prefix] = p * std::exp(2.0 * w.log_scale);
    return;
  }
  for (Outcome y : kOutcomes) {
    const std::size_t idx = prefix * 4 + index_of(y);
    enumerate(compose_factored(w, kraus[y]), diag, kraus, depth + 1, horizon, idx, out);
  }
}

}  // namespace

OutcomeDistribution exact_outcome_distribution(const DensityMatrix& rho, const KrausSet& kraus, int horizon) {
  if (horizon < 0 || horizon > kMaxOutcomeHorizon)
    throw std::invalid_argument("outcome horizon must be in [0, " + std::to_string(kMaxOutcomeHorizon) + "]");
  if (rho.truncation() != kraus.d) throw std::invalid_argument("outcome distribution: truncation mismatch");
  OutcomeDistribution dist;
  dist.horizon = horizon;
  const std::size_t words = std::size_t{1} << (2 * horizon);
  dist.probabilities.assign(words, 0.0);
  const Eigen::VectorXd diag = rho.mat.diagonal().real();
  const FactoredOperator id = FactoredOperator::identity(kraus.d);
  if (horizon == 0) {
    dist.probabilities[0] = diag.sum();
  } else {
    // Four independent subtrees write disjoint slices of the table.
    std::vector<double>& out = dist.probabilities;
    parallel_map<int>(4, 0, [&](std::size_t first) {
      enumerate(compose_factored(id, kraus.ops[first]), diag, kraus, 1, horizon, first, out);
      return 0;
    });
  }
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  dist.leakage = std::max(0.0, 1.0 - total);
  return dist;
}

OutcomeDistribution shifted_distribution(const DensityMatrix& rho, const KrausSet& kraus, std::int64_t t,
                                         int horizon) {
  DensityMatrix cur = rho;
  for (std::int64_t k = 0; k < t; ++k) cur = apply_channel(cur, kraus);
  return exact_outcome_distribution(cur, kraus, horizon);
}

double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.horizon != b.horizon) throw std::invalid_argument("tv_distance: horizon mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) acc += std::abs(a.probabilities[i] - b.probabilities[i]);
  return 0.5 * acc;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd StateMeasure::atom(std::size_t i) const {
  if (fock[i] >= 0 && support[i].size() == 0) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    m(fock[i], fock[i]) = 1.0;
    return m;
  }
  return support[i];
}

Eigen::MatrixXcd StateMeasure::barycenter() const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  for (std::size_t i = 0; i < size(); ++i) {
    if (fock[i] >= 0) {
      acc(fock[i], fock[i]) += weights[i];
    } else {
      acc += weights[i] * support[i];
    }
  }
  return acc;
}

StateMeasure nu_inv_measure(double theta, int d) {
  const GibbsMeasure g = gibbs_measure(theta, d);
  StateMeasure nu;
  nu.d = d;
  nu.tail_mass = g.tail_mass;
  const double kept = 1.0 - g.tail_mass;
  for (int n = 0; n <= d; ++n) {
    nu.support.emplace_back();
    nu.fock.push_back(n);
    nu.weights.push_back(g.weights[static_cast<std::size_t>(n)] / kept);
  }
  return nu;
}

int exact_fock_label(const Eigen::MatrixXcd& m) {
  int label = -1;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx v = m(i, j);
      if (v == cplx(0.0, 0.0)) continue;
      if (i != j || v != cplx(1.0, 0.0) || label >= 0) return -1;
      label = static_cast<int>(i);
    }
  }
  return label;
}

StateMeasure push_forward(const StateMeasure& nu, const KrausSet& kraus) {
  StateMeasure out;
  out.d = nu.d;
  out.tail_mass = nu.tail_mass;
  std::map<int, std::size_t> fock_slot;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    DensityMatrix x;
    x.mat = nu.atom(i);
    for (Outcome y : kOutcomes) {
      Applied a = apply_to_density(kraus[y], x);
      if (!(a.weight > 0.0)) continue;
      const double w = nu.weights[i] * a.weight;
      a.rho.mat /= a.weight;
      int label = exact_fock_label(a.rho.mat);
      if (label < 0 && nu.fock[i] >= 0) label = nu.fock[i] + shift_of(y);  // Fock atoms stay Fock
      if (label >= 0) {
        auto [it, inserted] = fock_slot.try_emplace(label, out.weights.size());
        if (inserted) {
          out.support.emplace_back();
          out.fock.push_back(label);
          out.weights.push_back(0.0);
        }
        out.weights[it->second] += w;
      } else {
        out.support.push_back(std::move(a.rho.mat));
        out.fock.push_back(-1);
        out.weights.push_back(w);
      }
    }
  }
  return out;
}

StateMeasure empirical_state_measure(const std::vector<DensityMatrix>& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empirical_state_measure: empty ensemble");
  StateMeasure out;
  out.d = ensemble.front().truncation();
  const double w = 1.0 / static_cast<double>(ensemble.size());
  std::map<int, std::size_t> fock_slot;
  for (const auto& rho : ensemble) {
    const int label = exact_fock_label(rho.mat);
    if (label >= 0) {
      auto [it, inserted] = fock_slot.try_emplace(label, out.weights.size());
      if (inserted) {
        out.support.emplace_back();
        out.fock.push_back(label);
        out.weights.push_back(0.0);
      }
      out.weights[it->second] += w;
      continue;
    }
    bool merged = false;
    for (std::size_t i = 0; i < out.size() && !merged; ++i) {
      if (out.fock[i] < 0 && out.support[i] == rho.mat) {
        out.weights[i] += w;
        merged = true;
      }
    }
    if (!merged) {
      out.support.push_back(rho.mat);
      out.fock.push_back(-1);
      out.weights.push_back(w);
    }
  }
  return out;
}

Eigen::MatrixXd ground_cost(const StateMeasure& a, const StateMeasure& b) {
  if (a.d != b.d) throw std::invalid_argument("ground_cost: truncation mismatch");
  Eigen::MatrixXd c(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a.fock[i] >= 0 && b.fock[j] >= 0) {
        c(i, j) = a.fock[i] == b.fock[j] ? 0.0 : 2.0;
      } else if (a.fock[i] >= 0) {
        Eigen::MatrixXcd diff = -b.support[j];
        diff(a.fock[i], a.fock[i]) += 1.0;
        c(i, j) = trace_norm(diff);
      } else if (b.fock[j] >= 0) {
        Eigen::MatrixXcd diff = a.support[i];
        diff(b.fock[j], b.fock[j]) -= 1.0;
        c(i, j) = trace_norm(diff);
      } else {
        c(i, j) = trace_norm(a.support[i] - b.support[j]);
      }
    }
  }
  return c;
}

double wasserstein1(const StateMeasure& a, const StateMeasure& b) {
  const Eigen::MatrixXd c = ground_cost(a, b);
  return solve_transport(a.weights, b.weights, c).cost;
}

double wasserstein1_with_tail(const StateMeasure& a, const StateMeasure& b) {
  return wasserstein1(a, b) + 2.0 * (a.tail_mass + b.tail_mass);
}

}  // namespace maser
