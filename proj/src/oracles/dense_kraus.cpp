#include "maser/oracles/dense_kraus.hpp"

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace maser::oracle {

namespace {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Diagonal f(N) on {0..d} with f(n) given by the callable.
template <class F>
Mat function_of_N(int d, F f) {
  Mat m = Mat::Zero(d + 1, d + 1);
  for (int n = 0; n <= d; ++n) m(n, n) = f(n);
  return m;
}

double sin_over_root(double xi, double eta, double n) {
  const double x = std::sqrt(xi * n + eta);
  if (x == 0.0) return std::numbers::pi;
  return std::sin(std::numbers::pi * x) / x;
}

}  // namespace

DenseKraus dense_kraus(double xi, double eta, double theta, double phi, int d) {
  const double p_minus = 1.0 / (1.0 + std::exp(-theta));
  const double p_plus = 1.0 / (1.0 + std::exp(theta));
  Mat a = Mat::Zero(d + 1, d + 1);
  for (int n = 1; n <= d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Mat adag = a.adjoint();

  auto C = [&](double n) {
    const double x = std::sqrt(xi * n + eta);
    return cplx(std::cos(std::numbers::pi * x), std::sqrt(eta) * sin_over_root(xi, eta, n));
  };
  auto S = [&](double n) { return cplx(std::sqrt(xi) * sin_over_root(xi, eta, n), 0.0); };

  const Mat phase = function_of_N(d, [&](int n) { return std::exp(cplx(0.0, -phi * n)); });
  const Mat CN = function_of_N(d, [&](int n) { return C(n); });
  const Mat CN1c = function_of_N(d, [&](int n) { return std::conj(C(n + 1)); });
  const Mat SN = function_of_N(d, [&](int n) { return S(n); });
  const Mat SN1 = function_of_N(d, [&](int n) { return S(n + 1); });

  DenseKraus k;
  k.d = d;
  k.ops[0] = std::sqrt(p_minus) * phase * CN;
  k.ops[1] = std::sqrt(p_minus) * phase * SN1 * a;
  k.ops[2] = std::sqrt(p_plus) * phase * SN * adag;
  k.ops[3] = std::sqrt(p_plus) * phase * CN1c;
  return k;
}

Mat dense_channel(const DenseKraus& k, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& v : k.ops) out += v * rho * v.adjoint();
  return out;
}

Mat dense_gram(const DenseKraus& k) {
  Mat out = Mat::Zero(k.d + 1, k.d + 1);
  for (const auto& v : k.ops) out += v.adjoint() * v;
  return out;
}

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

big big_sin_over_root(const big& x) {
  if (x == 0) return boost::math::constants::pi<big>();
  return sin(boost::math::constants::pi<big>() * x) / x;
}

}  // namespace

std::complex<double> precise_C(double xi, double eta, long n) {
  const big x = sqrt(big(xi) * n + big(eta));
  const big re = cos(boost::math::constants::pi<big>() * x);
  const big im = sqrt(big(eta)) * big_sin_over_root(x);
  return {re.convert_to<double>(), im.convert_to<double>()};
}

double precise_S(double xi, double eta, long n) {
  const big x = sqrt(big(xi) * n + big(eta));
  return (sqrt(big(xi)) * big_sin_over_root(x)).convert_to<double>();
}

}  // namespace maser::oracle
