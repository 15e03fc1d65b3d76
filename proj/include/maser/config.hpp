#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "maser/params.hpp"

namespace maser {

inline constexpr int kFormatVersion = 1;

struct ConfigViolation {
  std::string pointer;  // JSON pointer, e.g. "/params/dimensionless/xi"
  std::string message;
};

/// Carries every violation found, not just the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<ConfigViolation> v);
  ConfigError(const std::string& pointer, const std::string& message);
  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

struct RunConfig {
  enum class Source { Physical, Dimensionless } source = Source::Dimensionless;
  PhysicalParams physical;                // when source == Physical
  DimensionlessParams params;             // resolved

  int d = 64;
  std::string rho0 = "fock:0";
  std::int64_t horizon = 1000;
  std::size_t trajectories = 1;
  std::uint64_t seed = 0;
  std::int64_t checkpoint_every = 0;
  std::string output_dir = ".";
  double leakage_budget = 1e-9;
  int guard = 8;

  double channel_tol = 1e-10;
  std::int64_t channel_t_max = 100000;
  std::int64_t channel_check_every = 1;
  int outcome_horizon = 4;
  std::vector<std::int64_t> outcome_times = {0, 10, 100, 1000};
};

/// Parses and validates a JSON document. Throws ConfigError listing every
/// problem with its JSON pointer.
RunConfig parse_config(const std::string& text);

/// Canonical JSON text: every field explicit, keys sorted, two-space indent.
std::string canonical_json(const RunConfig& cfg);

}  // namespace maser
