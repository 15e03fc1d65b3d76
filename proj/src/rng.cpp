#include "maser/rng.hpp"

namespace maser {

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

}  // namespace maser
