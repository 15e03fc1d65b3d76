#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace maser::oracle {

/// Kraus operators built as plain dense matrices on {0..d} from a, a* and
/// functions of N, evaluated with std::cos/std::sin. Shares no code with the
/// factored engine. Order: --, -+, +-, ++.
struct DenseKraus {
  std::array<Eigen::MatrixXcd, 4> ops;
  int d = 0;
};

DenseKraus dense_kraus(double xi, double eta, double theta, double phi, int d);

/// sum_y V_y rho V_y*.
Eigen::MatrixXcd dense_channel(const DenseKraus& k, const Eigen::MatrixXcd& rho);

/// sum_y V_y* V_y (identity below the truncation edge).
Eigen::MatrixXcd dense_gram(const DenseKraus& k);

/// C(n) and S(n) in 50-digit binary floating point, rounded to double at the end.
std::complex<double> precise_C(double xi, double eta, long n);
double precise_S(double xi, double eta, long n);

}  // namespace maser::oracle
