#pragma once

#include <cstdint>
#include <random>

namespace maser {

/// Seedable generator for one trajectory. Stream i of an ensemble is
/// seeded from (master_seed, i), so results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  std::uint64_t next() { return engine_(); }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace maser
