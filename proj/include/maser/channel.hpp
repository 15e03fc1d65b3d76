#pragma once

#include <cstdint>
#include <vector>

#include "maser/fock_ops.hpp"
#include "maser/resonance.hpp"

namespace maser {

/// L(rho) = sum_y V_y rho V_y*. Mass lost through the truncation edge is added to
/// the result's leakage. Bands |i-j| = const are mapped onto themselves.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus);

/// Gibbs state e^{-theta N} / Tr on {0..d}, renormalized; throws NoInvariantMeasure
/// when theta <= 0.
DensityMatrix invariant_state(double theta, int d);

struct ChannelReport {
  std::vector<double> distances;   // ||L^t(rho) - target||_1 at each checked t
  std::vector<std::int64_t> times;
  std::int64_t iterations = 0;
  bool converged = false;
  DensityMatrix final_state;
};

/// Iterates L until the trace distance to `target` is <= tol or t_max is hit.
/// Non-convergence is reported, not thrown. `check_every` > 1 thins the
/// (eigensolve-priced) distance evaluations.
ChannelReport iterate_channel(const DensityMatrix& rho0, const KrausSet& kraus, const DensityMatrix& target,
                              double tol, std::int64_t t_max, std::int64_t check_every = 1);

/// sum_j Tr(rho P_j) rho_inv^(j), with rho_inv^(j) the local Gibbs state of
/// sector j. theta <= 0 is accepted only when no open-ended sector is involved.
DensityMatrix resonant_limit(const DensityMatrix& rho0, const SectorPartition& sectors, double theta);

}  // namespace maser
