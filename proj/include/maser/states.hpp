#pragma once

#include <string>

#include "maser/fock_ops.hpp"

namespace maser {

/// Builds an initial state on {0..d} from a textual spec:
///
///   fock:K                  |K><K|
///   thermal:THETA           e^{-THETA N}, truncated and renormalized
///   mixture:K:W,K:W,...     sum_i W_i |K_i><K_i| (weights renormalized)
///   coherentlike:A0,A1,...  pure state with real amplitudes A_n on |n>
DensityMatrix make_initial_state(const std::string& spec, int d);

/// Highest level whose population exceeds `threshold` (-1 if none).
int effective_support(const DensityMatrix& rho, double threshold);

/// e^{-theta N} truncated to {0..d} and renormalized to unit trace.
DensityMatrix thermal_state(double theta, int d);

}  // namespace maser
