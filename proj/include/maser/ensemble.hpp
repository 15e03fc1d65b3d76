#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maser/trajectory.hpp"

namespace maser {

/// Number of worker threads: $MASER_THREADS when set, else hardware concurrency.
unsigned default_thread_count();

/// Runs `count` independent jobs on a pool and returns results in index order.
/// The first exception (by index) is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& job);

struct EnsembleSpec {
  std::int64_t horizon = 0;
  std::size_t trajectories = 1;
  std::uint64_t master_seed = 0;
  std::int64_t checkpoint_every = 0;
  TrajectoryOptions options;
  unsigned threads = 0;  // 0: default_thread_count()
};

/// Trajectory i uses stream (master_seed, i); the output order is the index order.
std::vector<TrajectoryRun> run_ensemble(const DensityMatrix& rho0, const Model& model, const EnsembleSpec& spec);

}  // namespace maser

#include "maser/ensemble_impl.hpp"
