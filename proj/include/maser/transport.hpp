#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace maser {

struct TransportFlow {
  int source = 0;
  int sink = 0;
  double mass = 0.0;
};

struct TransportResult {
  double cost = 0.0;
  std::vector<TransportFlow> flows;
  std::int64_t pivots = 0;
};

/// Exact balanced transportation problem min <C, X> s.t. X 1 = supply,
/// X^T 1 = demand, X >= 0, solved with the network simplex on a bipartite
/// spanning-tree basis.
///
/// Masses are rescaled to integers summing to `scale` (largest-remainder
/// rounding), so flows are exact and degenerate pivots cannot drift. Pricing is
/// Dantzig's rule, falling back to Bland's rule after a run of degenerate
/// pivots. Throws std::invalid_argument when the totals differ by more than 1e-9.
TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                const Eigen::MatrixXd& cost, std::int64_t scale = 1'000'000'000'000LL);

}  // namespace maser
