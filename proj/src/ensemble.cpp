#include "maser/ensemble.hpp"

#include <cstdlib>
#include <string>

namespace maser {

unsigned default_thread_count() {
  if (const char* env = std::getenv("MASER_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<TrajectoryRun> run_ensemble(const DensityMatrix& rho0, const Model& model, const EnsembleSpec& spec) {
  return parallel_map<TrajectoryRun>(spec.trajectories, spec.threads, [&](std::size_t i) {
    return run_trajectory(rho0, model, spec.horizon, spec.master_seed, i, spec.checkpoint_every, spec.options);
  });
}

}  // namespace maser
