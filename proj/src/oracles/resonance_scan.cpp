#include "maser/oracles/resonance_scan.hpp"

namespace maser::oracle {

std::vector<long> resonances_by_k(long xi, long eta, long n_max) {
  std::vector<long> out;
  for (long k = 1; k * k <= xi * n_max + eta; ++k) {
    const long r = k * k - eta;
    if (r <= 0 || r % xi != 0) continue;
    out.push_back(r / xi);
  }
  return out;
}

std::vector<long> resonances_by_k(long xn, long xd, long en, long ed, long n_max) {
  std::vector<long> out;
  // xi n + eta = k^2  <=>  n xn ed = (k^2 ed - en) xd
  for (long k = 1; k * k * xd * ed <= xn * ed * n_max + en * xd; ++k) {
    const long num = (k * k * ed - en) * xd;
    const long den = xn * ed;
    if (num <= 0 || num % den != 0) continue;
    out.push_back(num / den);
  }
  return out;
}

bool no_consecutive(const std::vector<long>& levels) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] == levels[i - 1] + 1) return false;
  return true;
}

}  // namespace maser::oracle
