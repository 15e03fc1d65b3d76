#include "maser/model.hpp"

namespace maser {

Model::Model(const DimensionlessParams& p, int truncation)
    : params(p), d(truncation), levels(p, truncation), kraus(build_kraus(levels)), kernel(build_kernel(levels)) {
  if (p.theta > 0.0) gibbs = gibbs_measure(p.theta, truncation);
}

}  // namespace maser
