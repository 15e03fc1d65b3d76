#pragma once

#include <vector>

namespace maser::oracle {

/// Resonances of integer (xi, eta) by enumerating k >= 1 and testing whether
/// n = (k^2 - eta) / xi is an integer in [1, n_max].
std::vector<long> resonances_by_k(long xi, long eta, long n_max);

/// Same for rational xi = xn/xd and eta = en/ed: n = (k^2 ed - en) xd / (xn ed).
std::vector<long> resonances_by_k(long xn, long xd, long en, long ed, long n_max);

/// True if no two consecutive levels in [1, n_max] are both resonant.
bool no_consecutive(const std::vector<long>& levels);

}  // namespace maser::oracle
