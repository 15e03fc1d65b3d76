#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace maser {

/// Probability mass pushed past the truncation level exceeded its budget, or a
/// classical path tried to leave {0..d}.
class TruncationOverflow : public std::runtime_error {
 public:
  TruncationOverflow(std::int64_t step, double leakage, const std::string& what)
      : std::runtime_error(what), step_(step), leakage_(leakage) {}
  std::int64_t step() const { return step_; }
  double leakage() const { return leakage_; }

 private:
  std::int64_t step_;
  double leakage_;
};

/// No normalizable invariant state or measure exists (theta <= 0).
class NoInvariantMeasure : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace maser
