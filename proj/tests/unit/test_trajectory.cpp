#include <doctest.h>

#include <cmath>
#include <numeric>

#include "maser/errors.hpp"
#include "maser/states.hpp"
#include "maser/trajectory.hpp"

using namespace maser;

namespace {
DimensionlessParams base() { return DimensionlessParams::exact(Rational(1, 2), Rational(1, 3), std::log(2.0), 1.0); }
}  // namespace

TEST_CASE("initialisation") {
  const Model model(base(), 20);
  const auto s = init_trajectory(DensityMatrix::fock(20, 3), model, 1);
  CHECK(s.t == 0);
  CHECK(s.w.shift == 0);
  const double total = std::accumulate(s.m.probabilities.begin(), s.m.probabilities.end(), 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.m.probabilities[0] == doctest::Approx(0.5).epsilon(1e-6));

  CHECK_THROWS_AS(init_trajectory(DensityMatrix::fock(20, 15), model, 1), std::invalid_argument);
  TrajectoryOptions loose;
  loose.guard = 2;
  CHECK_NOTHROW(init_trajectory(DensityMatrix::fock(20, 15), model, 1, 0, loose));
  CHECK_THROWS_AS(init_trajectory(DensityMatrix::fock(10, 1), model, 1), std::invalid_argument);

  auto hot = base();
  hot.theta = -0.5;
  const Model hot_model(hot, 20);
  CHECK_THROWS_AS(init_trajectory(DensityMatrix::fock(20, 1), hot_model, 1), NoInvariantMeasure);
}

TEST_CASE("same seed, same trajectory") {
  const Model model(base(), 30);
  const auto rho0 = make_initial_state("coherentlike:1,1,1", 30);
  TrajectoryOptions opts;
  opts.history_capacity = 50;
  auto a = init_trajectory(rho0, model, 42, 3, opts);
  auto b = init_trajectory(rho0, model, 42, 3, opts);
  auto c = init_trajectory(rho0, model, 42, 4, opts);
  bool differs = false;
  for (int t = 0; t < 300; ++t) {
    const Outcome ya = sample_step(a, model);
    CHECK(ya == sample_step(b, model));
    if (ya != sample_step(c, model)) differs = true;
  }
  CHECK(differs);
  CHECK(a.rho.mat == b.rho.mat);
  CHECK(a.history.size() == 50);
  int shift = 0;
  for (Outcome y : a.history) shift += shift_of(y);
  CHECK(shift != 1000);  // history is only the last 50 letters
}

TEST_CASE("history shift equals the accumulated shift") {
  const Model model(base(), 30);
  TrajectoryOptions opts;
  opts.history_capacity = 1000;
  auto s = init_trajectory(DensityMatrix::fock(30, 4), model, 5, 0, opts);
  for (int t = 0; t < 200; ++t) sample_step(s, model);
  int shift = 0;
  for (Outcome y : s.history) shift += shift_of(y);
  CHECK(shift == s.w.shift);
}

TEST_CASE("martingale vector bookkeeping") {
  const Model model(base(), 20);
  auto s = init_trajectory(DensityMatrix::fock(20, 2), model, 9);
  apply_outcome(s, model, Outcome::MinusPlus);
  apply_outcome(s, model, Outcome::MinusPlus);
  // |0> and |1> are now killed.
  CHECK(s.m.probabilities[0] == 0.0);
  CHECK(s.m.probabilities[1] == 0.0);
  CHECK(evolved_level(s, 0) == kCemetery);
  CHECK(evolved_level(s, 2) == 0);
  const double total = std::accumulate(s.m.probabilities.begin(), s.m.probabilities.end(), 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(apply_outcome(s, model, Outcome::MinusPlus));  // rho is |0><0| now
  CHECK(martingale_residual(s, model) < 1e-13);
}

TEST_CASE("n_hat ties go to the lower level") {
  MartingaleVector m{{0.25, 0.375, 0.375}};
  CHECK(estimate_n_infinity(m).n_hat == 1);
  CHECK(estimate_n_infinity(m).confidence == 0.375);
}

TEST_CASE("diagnostics bounds and purification of a Fock state") {
  const Model model(base(), 40);
  const auto run = run_trajectory(DensityMatrix::fock(40, 3), model, 500, 77, 0, 100);
  REQUIRE(run.checkpoints.size() == 6);
  for (const auto& c : run.checkpoints) {
    CHECK(c.gap >= 0.0);
    CHECK(c.gap <= 2.0);
    CHECK(c.gap <= c.gap_bound + 1e-12);
    CHECK(c.purity == doctest::Approx(1.0));
  }
  // A Fock state never leaves the Fock manifold: gap 0 as soon as n_hat = 3.
  CHECK(run.checkpoints.back().n_hat == 3);
  CHECK(run.checkpoints.back().gap == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("leakage budget") {
  const Model model(base(), 10);
  TrajectoryOptions opts;
  opts.guard = 1;
  opts.leakage_budget = 1e-12;
  auto s = init_trajectory(DensityMatrix::fock(10, 8), model, 3, 0, opts);
  bool thrown = false;
  try {
    for (int t = 0; t < 100000; ++t) sample_step(s, model);
  } catch (const TruncationOverflow& e) {
    thrown = true;
    CHECK(e.step() > 0);
    CHECK(e.leakage() > 1e-12);
  }
  CHECK(thrown);
}
