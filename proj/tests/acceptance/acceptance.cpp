// One line per acceptance criterion; exit status 1 if any fails.
// Usage: acceptance [criterion ids...]
#include <cstdio>
#include <cstdlib>
#include <string>

#include "maser/verify.hpp"

int main(int argc, char** argv) {
  maser::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  opts.on_result = [](const maser::CriterionResult& r) {
    std::printf("%s\n", maser::format_result(r).c_str());
    std::fflush(stdout);
  };
  const auto results = maser::run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed ? 1 : 0;
}
