#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maser/fock_ops.hpp"
#include "maser/oracles/dense_kraus.hpp"
#include "maser/rng.hpp"

using namespace maser;

namespace {

Eigen::MatrixXcd random_state(Rng& rng, int d) {
  Eigen::MatrixXcd g(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) g(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  Eigen::MatrixXcd r = g * g.adjoint();
  return r / r.trace().real();
}

}  // namespace

TEST_CASE("level values at exact resonances") {
  const auto p = DimensionlessParams::exact(Rational(24), Rational(1), 1.0, 0.0);
  const LevelTable t(p, 30);
  for (int n : {0, 1, 2, 5, 7, 12, 15, 22, 26}) {
    CHECK(t.resonant(n) == (n > 0));
    CHECK(t.S(n) == 0.0);
    CHECK(t.alpha(n) == 0.0);
    CHECK(std::abs(t.C(n)) == 1.0);
  }
  CHECK(t.C(0) == cplx(-1.0, 0.0));  // sqrt(1) = 1
  CHECK(t.C(1) == cplx(-1.0, 0.0));  // sqrt(25) = 5
  CHECK_FALSE(t.resonant(3));
  // half-odd root: xi n + eta = 9/4
  const LevelTable h(DimensionlessParams::exact(Rational(1, 4), Rational(2), 1.0, 0.0), 3);
  CHECK(h.C(1).real() == 0.0);
}

TEST_CASE("level functions against 50-digit evaluation") {
  Rng rng(7, 0);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double xi = 5.0 * rng.uniform();
    const double eta = 3.0 * rng.uniform() * (i % 3 ? 1.0 : 0.0);
    const auto p = DimensionlessParams::floating(xi, eta, 0.5, 0.0);
    const LevelTable t(p, 200);
    for (int n = 0; n <= 200; ++n) {
      worst = std::max(worst, std::abs(t.C(n) - oracle::precise_C(xi, eta, n)));
      worst = std::max(worst, std::abs(t.S(n) - oracle::precise_S(xi, eta, n)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("small-argument branch is continuous") {
  // eta = 0: x = sqrt(xi n) is tiny for tiny xi.
  const auto p = DimensionlessParams::floating(1e-12, 0.0, 0.5, 0.0);
  const LevelTable t(p, 3);
  CHECK(t.S(0) == doctest::Approx(std::sqrt(1e-12) * std::numbers::pi));
  CHECK(t.S(1) == doctest::Approx(oracle::precise_S(1e-12, 0.0, 1)).epsilon(1e-14));
}

TEST_CASE("outcome labels") {
  for (Outcome y : kOutcomes) CHECK(parse_outcome(label(y)) == y);
  CHECK(shift_of(Outcome::MinusPlus) == -1);
  CHECK(shift_of(Outcome::PlusMinus) == 1);
  CHECK_THROWS(parse_outcome("+0"));
}

TEST_CASE("stochasticity and the boundary defect") {
  const auto p = DimensionlessParams::floating(0.7, 0.2, 0.9, 1.3);
  const auto ks = build_kraus(p, 20);
  const auto rep = verify_stochasticity(ks);
  CHECK(rep.max_interior_deviation < 1e-14);
  CHECK(rep.boundary_defect == doctest::Approx(ks.boundary_defect).epsilon(1e-12));
  CHECK(ks[Outcome::PlusMinus].kills(20));
  CHECK(ks[Outcome::MinusPlus].kills(0));
}

TEST_CASE("Kraus operators equal the dense construction") {
  Rng rng(11, 0);
  for (int i = 0; i < 10; ++i) {
    const auto p = DimensionlessParams::floating(4.0 * rng.uniform(), 2.0 * rng.uniform(), 2.0 * rng.uniform() - 1.0,
                                                 6.0 * rng.uniform());
    const auto ks = build_kraus(p, 16);
    const auto dk = oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, 16);
    for (std::size_t y = 0; y < 4; ++y) CHECK((ks.ops[y].dense() - dk.ops[y]).norm() < 1e-13);
  }
}

TEST_CASE("composition and rescaling") {
  const auto p = DimensionlessParams::floating(0.5, 1.0 / 3.0, std::log(2.0), 1.0);
  const auto ks = build_kraus(p, 10);
  const auto id = FactoredOperator::identity(10);
  const auto w = compose_factored(id, ks[Outcome::PlusMinus]);
  CHECK((w.dense() - ks[Outcome::PlusMinus].dense()).norm() == 0.0);
  CHECK(w.image_of(3).value() == 4);
  CHECK_FALSE(w.image_of(10).has_value());

  // A long word: magnitudes get rescaled, log_scale carries the exponent.
  FactoredOperator acc = id;
  double log_expected = 0.0;
  for (int t = 0; t < 4000; ++t) {
    acc = compose_factored(acc, ks[Outcome::MinusMinus]);
    log_expected += std::log(ks[Outcome::MinusMinus].mag[2]);
  }
  CHECK(acc.log_scale != 0.0);
  CHECK(std::log(acc.mag[2]) + acc.log_scale == doctest::Approx(log_expected).epsilon(1e-9));
}

TEST_CASE("apply_to_density preserves bands and matches dense") {
  Rng rng(3, 0);
  const auto p = DimensionlessParams::floating(1.3, 0.4, 0.8, 2.0);
  const auto ks = build_kraus(p, 12);
  const auto dk = oracle::dense_kraus(p.xi, p.eta, p.theta, p.phi, 12);
  DensityMatrix full;
  full.mat = random_state(rng, 12);
  Eigen::MatrixXcd banded = full.mat;
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j)
      if (std::abs(i - j) > 2) banded(i, j) = 0.0;
  DensityMatrix b;
  b.mat = banded;
  CHECK(bandwidth(b.mat) == 2);
  for (Outcome y : kOutcomes) {
    const auto a = apply_to_density(ks[y], full);
    const Eigen::MatrixXcd want = dk.ops[index_of(y)] * full.mat * dk.ops[index_of(y)].adjoint();
    CHECK((a.rho.mat - want).norm() < 1e-13);
    CHECK(a.weight == doctest::Approx(want.trace().real()));
    CHECK(bandwidth(apply_to_density(ks[y], b, 2).rho.mat) <= 2);
  }
  const auto w = outcome_weights(ks, full.mat);
  for (Outcome y : kOutcomes) CHECK(w[index_of(y)] == doctest::Approx(apply_to_density(ks[y], full).weight));
}

TEST_CASE("density matrices") {
  CHECK_NOTHROW(DensityMatrix::fock(4, 2).validate());
  CHECK_THROWS(DensityMatrix::fock(4, 5));
  Eigen::VectorXcd psi(3);
  psi << 1.0, cplx(0.0, 1.0), 0.0;
  const auto pure = DensityMatrix::pure(psi);
  CHECK(pure.trace() == doctest::Approx(1.0));
  CHECK_NOTHROW(pure.validate());
  DensityMatrix bad;
  bad.mat = Eigen::MatrixXcd::Zero(2, 2);
  bad.mat(0, 0) = 1.5;
  bad.mat(1, 1) = -0.5;
  CHECK_THROWS(bad.validate());
  CHECK(bandwidth(Eigen::MatrixXcd::Zero(3, 3)) == -1);
}

TEST_CASE("trace norm") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  CHECK(trace_norm(a) == 2.0);
  // |+><+| - |0><0| has eigenvalues +-1/sqrt2
  Eigen::MatrixXcd b(2, 2);
  b << -0.5, 0.5, 0.5, 0.5;
  CHECK(trace_norm(b) == doctest::Approx(std::sqrt(2.0)));
  Eigen::MatrixXcd c = b;
  c(0, 1) = 2.0;
  CHECK_THROWS(trace_norm(c));
}
