#include <doctest.h>

#include <cmath>

#include "maser/channel.hpp"
#include "maser/errors.hpp"
#include "maser/oracles/dense_kraus.hpp"
#include "maser/rng.hpp"
#include "maser/states.hpp"

using namespace maser;

namespace {
DimensionlessParams base() { return DimensionlessParams::exact(Rational(1, 2), Rational(1, 3), std::log(2.0), 1.0); }
}  // namespace

TEST_CASE("channel matches the dense oracle and keeps the trace") {
  const auto p = base();
  const auto ks = build_kraus(p, 14);
  const auto dk = oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, 14);
  Rng rng(4, 0);
  Eigen::MatrixXcd g(15, 15);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) g(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  Eigen::MatrixXcd r = g * g.adjoint();
  r.bottomRows(3).setZero();
  r.rightCols(3).setZero();
  DensityMatrix rho;
  rho.mat = r / r.trace().real();
  const auto out = apply_channel(rho, ks);
  CHECK((out.mat - oracle::dense_channel(dk, rho.mat)).norm() < 1e-14);
  CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(out.leakage == doctest::Approx(0.0));
}

TEST_CASE("leakage through the top level is accounted") {
  const auto ks = build_kraus(base(), 4);
  const auto out = apply_channel(DensityMatrix::fock(4, 4), ks);
  CHECK(out.leakage == doctest::Approx(ks.boundary_defect).epsilon(1e-12));
  CHECK(out.trace() + out.leakage == doctest::Approx(1.0));
}

TEST_CASE("the Gibbs state is a fixed point") {
  const auto ks = build_kraus(base(), 60);
  const auto g = invariant_state(std::log(2.0), 60);
  const auto next = apply_channel(g, ks);
  CHECK(trace_norm(next.mat - g.mat) < 1e-15);
  CHECK_THROWS_AS(invariant_state(0.0, 10), NoInvariantMeasure);
}

TEST_CASE("iteration converges to Gibbs from a Fock state") {
  const auto ks = build_kraus(base(), 64);
  const auto rep = iterate_channel(DensityMatrix::fock(64, 10), ks, invariant_state(std::log(2.0), 64), 1e-8, 100000, 50);
  CHECK(rep.converged);
  CHECK(rep.distances.back() <= 1e-8);
  CHECK(rep.times.size() == rep.distances.size());
  const auto capped = iterate_channel(DensityMatrix::fock(64, 10), ks, invariant_state(std::log(2.0), 64), 1e-8, 10);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 10);
}

TEST_CASE("coherences of a non-resonant model decay") {
  const auto ks = build_kraus(base(), 40);
  auto rho = make_initial_state("coherentlike:1,1", 40);
  for (int t = 0; t < 3000; ++t) rho = apply_channel(rho, ks);
  CHECK(std::abs(rho.mat(1, 0)) < 1e-6);
}

TEST_CASE("resonant limit keeps sector masses") {
  const auto p = DimensionlessParams::exact(Rational(1), Rational(0), std::log(2.0), 0.4);
  const int d = 24;
  const auto part = sector_partition(find_resonances(p, d + 1), d);
  const auto rho0 = make_initial_state("mixture:2:0.25,6:0.75", d);
  const auto lim = resonant_limit(rho0, part, p.theta);
  double s1 = 0.0, s2 = 0.0;
  for (int n = 1; n <= 3; ++n) s1 += lim.mat(n, n).real();
  for (int n = 4; n <= 8; ++n) s2 += lim.mat(n, n).real();
  CHECK(s1 == doctest::Approx(0.25));
  CHECK(s2 == doctest::Approx(0.75));
  CHECK(lim.mat(5, 5).real() / lim.mat(4, 4).real() == doctest::Approx(0.5));
  // And it is where the channel goes.
  const auto rep = iterate_channel(rho0, build_kraus(p, d), lim, 1e-10, 100000);
  CHECK(rep.converged);

  // theta <= 0 is fine while every sector involved is finite.
  CHECK_NOTHROW(resonant_limit(rho0, part, -1.0));
  const auto open = sector_partition(find_resonances(p, 20), 20);
  CHECK_THROWS_AS(resonant_limit(DensityMatrix::fock(20, 17), open, -1.0), NoInvariantMeasure);
  CHECK_THROWS(resonant_limit(rho0, open, 1.0));
}
