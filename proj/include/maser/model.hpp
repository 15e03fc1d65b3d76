#pragma once

#include <optional>

#include "maser/birth_death.hpp"
#include "maser/fock_ops.hpp"
#include "maser/resonance.hpp"

namespace maser {

/// Everything derived from (params, d) that the engines share.
struct Model {
  DimensionlessParams params;
  int d = 0;
  LevelTable levels;
  KrausSet kraus;
  BDKernel kernel;
  std::optional<GibbsMeasure> gibbs;  // present iff theta > 0

  Model(const DimensionlessParams& params, int d);
};

}  // namespace maser
