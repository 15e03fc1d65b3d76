#include <doctest.h>

#include <vector>

#include "maser/oracles/dense_lp.hpp"
#include "maser/rng.hpp"
#include "maser/transport.hpp"

using namespace maser;

namespace {
std::vector<double> random_simplex(Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double s = 0.0;
  for (auto& x : v) s += (x = rng.uniform() + 0.05);
  for (auto& x : v) x /= s;
  return v;
}
}  // namespace

TEST_CASE("network simplex agrees with the dense LP") {
  Rng rng(99, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int m = 1 + static_cast<int>(rng.next() % 6), n = 1 + static_cast<int>(rng.next() % 6);
    const auto a = random_simplex(rng, m), b = random_simplex(rng, n);
    Eigen::MatrixXd c(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = 2.0 * rng.uniform();
    const auto res = solve_transport(a, b, c);
    CHECK(res.cost == doctest::Approx(oracle::transport_cost_lp(a, b, c)).epsilon(1e-9));
    std::vector<double> out(static_cast<std::size_t>(m)), in(static_cast<std::size_t>(n));
    for (const auto& f : res.flows) {
      CHECK(f.mass >= 0.0);
      out[static_cast<std::size_t>(f.source)] += f.mass;
      in[static_cast<std::size_t>(f.sink)] += f.mass;
    }
    for (int i = 0; i < m; ++i) CHECK(out[static_cast<std::size_t>(i)] == doctest::Approx(a[static_cast<std::size_t>(i)]).epsilon(1e-9));
    for (int j = 0; j < n; ++j) CHECK(in[static_cast<std::size_t>(j)] == doctest::Approx(b[static_cast<std::size_t>(j)]).epsilon(1e-9));
  }
}

TEST_CASE("degenerate instances") {
  const std::vector<double> a = {0.5, 0.5}, b = {0.5, 0.5};
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  CHECK(solve_transport(a, b, zero).cost == 0.0);
  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(2, 2, 1.0);
  CHECK(solve_transport(a, b, flat).cost == doctest::Approx(1.0));
  const std::vector<double> one = {1.0};
  Eigen::MatrixXd c(1, 2);
  c << 0.25, 0.75;
  CHECK(solve_transport(one, b, c).cost == doctest::Approx(0.5));
  const std::vector<double> lopsided = {1.0, 0.0, 0.0};
  Eigen::MatrixXd c3 = Eigen::MatrixXd::Identity(3, 2);
  CHECK(solve_transport(lopsided, b, c3).cost == doctest::Approx(0.5));
}

TEST_CASE("unbalanced totals are rejected") {
  const std::vector<double> a = {0.5, 0.6}, b = {0.5, 0.5};
  CHECK_THROWS_AS(solve_transport(a, b, Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}
