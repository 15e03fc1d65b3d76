#pragma once

#include <vector>

#include <Eigen/Dense>

namespace maser::oracle {

/// min c^T x  s.t.  A x = b, x >= 0, by a two-phase tableau simplex with
/// Bland's rule. Dense and slow; meant for a few dozen constraints.
struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd x;
};

LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

/// Balanced transportation cost through the generic LP above.
double transport_cost_lp(const std::vector<double>& supply, const std::vector<double>& demand,
                         const Eigen::MatrixXd& cost);

}  // namespace maser::oracle
