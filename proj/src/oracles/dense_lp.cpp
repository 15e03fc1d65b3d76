#include "maser/oracles/dense_lp.hpp"

#include <cmath>
#include <stdexcept>

namespace maser::oracle {

namespace {

constexpr double kEps = 1e-12;

// Tableau rows 0..m-1 are constraints, last column is the rhs, `obj` holds
// reduced costs. Returns false if unbounded.
bool bland_simplex(Eigen::MatrixXd& T, Eigen::VectorXd& obj, std::vector<int>& basis, int ncols) {
  const int m = static_cast<int>(T.rows());
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (obj(j) < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) <= kEps) continue;
      const double r = T(i, ncols) / T(i, enter);
      if (leave < 0 || r < best - kEps || (std::abs(r - best) <= kEps && basis[i] < basis[leave])) {
        leave = i;
        best = r;
      }
    }
    if (leave < 0) return false;
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i < m; ++i)
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    obj -= obj(enter) * T.row(leave).transpose();
    basis[leave] = enter;
  }
  throw std::runtime_error("dense LP: iteration limit");
}

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  // Columns: n structural, m artificial, rhs.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, n + m + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double s = b(i) < 0 ? -1.0 : 1.0;
    T.row(i).head(n) = s * A.row(i);
    T(i, n + i) = 1.0;
    T(i, n + m) = s * b(i);
    basis[i] = n + i;
  }
  // Phase 1: minimize the sum of artificials.
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(n + m + 1);
  for (int i = 0; i < m; ++i) obj -= T.row(i).transpose();
  for (int i = 0; i < m; ++i) obj(n + i) = 0.0;
  bland_simplex(T, obj, basis, n + m);
  LpResult res;
  if (-obj(n + m) > 1e-9) return res;
  // Drive remaining artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > 1e-9) {
        T.row(i) /= T(i, j);
        for (int r = 0; r < m; ++r)
          if (r != i) T.row(r) -= T(r, j) * T.row(i);
        basis[i] = j;
        break;
      }
    }
  }
  // Phase 2 on structural columns only; redundant rows keep an artificial at 0.
  Eigen::MatrixXd T2(m, n + 1);
  T2.leftCols(n) = T.leftCols(n);
  T2.col(n) = T.col(n + m);
  Eigen::VectorXd obj2 = Eigen::VectorXd::Zero(n + 1);
  obj2.head(n) = c;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) obj2 -= c(basis[i]) * T2.row(i).transpose();
  std::vector<int> basis2 = basis;
  for (int i = 0; i < m; ++i)
    if (basis2[i] >= n) basis2[i] = n + i;  // never chosen to enter
  if (!bland_simplex(T2, obj2, basis2, n)) throw std::runtime_error("dense LP: unbounded");
  res.feasible = true;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis2[i] < n) res.x(basis2[i]) = T2(i, n);
  res.objective = c.dot(res.x);
  return res;
}

double transport_cost_lp(const std::vector<double>& supply, const std::vector<double>& demand,
                         const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + n, m * n);
  Eigen::VectorXd b(m + n);
  Eigen::VectorXd c(m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      A(i, i * n + j) = 1.0;
      A(m + j, i * n + j) = 1.0;
      c(i * n + j) = cost(i, j);
    }
  }
  for (int i = 0; i < m; ++i) b(i) = supply[static_cast<std::size_t>(i)];
  for (int j = 0; j < n; ++j) b(m + j) = demand[static_cast<std::size_t>(j)];
  const LpResult r = solve_standard_lp(A, b, c);
  if (!r.feasible) throw std::invalid_argument("transport LP infeasible");
  return r.objective;
}

}  // namespace maser::oracle
