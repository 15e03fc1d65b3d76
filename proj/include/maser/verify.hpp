#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace maser {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20261014;
  std::vector<int> only;  // empty: all criteria
  unsigned threads = 0;
  /// Called after each criterion finishes (progress output).
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 14;

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

/// "PASS  3  factored vs dense  (0.12 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace maser
