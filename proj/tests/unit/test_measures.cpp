#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maser/birth_death.hpp"
#include "maser/channel.hpp"
#include "maser/measures.hpp"
#include "maser/states.hpp"

using namespace maser;

namespace {
DimensionlessParams base() { return DimensionlessParams::exact(Rational(1, 2), Rational(1, 3), std::log(2.0), 1.0); }

double total(const OutcomeDistribution& p) { return std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0); }
}  // namespace

TEST_CASE("word indexing") {
  const OutcomeWord w = {Outcome::PlusMinus, Outcome::MinusMinus, Outcome::PlusPlus};
  const auto i = OutcomeDistribution::index_of(w);
  CHECK(i == 2 * 16 + 0 * 4 + 3);
  CHECK(OutcomeDistribution::word_at(i, 3) == w);
}

TEST_CASE("one-letter law of a Fock state is the letter weights") {
  const auto p = base();
  const auto ks = build_kraus(p, 30);
  for (int n : {0, 1, 5, 12}) {
    const auto dist = exact_outcome_distribution(DensityMatrix::fock(30, n), ks, 1);
    const auto w = letter_weights(p, n);
    for (int y = 0; y < 4; ++y) CHECK(dist.probabilities[y] == doctest::Approx(w[y]).epsilon(1e-14));
  }
}

TEST_CASE("outcome laws sum to one and are affine in rho") {
  const auto ks = build_kraus(base(), 30);
  const auto a = make_initial_state("coherentlike:1,0.5,0.25", 30);
  const auto b = DensityMatrix::fock(30, 4);
  DensityMatrix mix;
  mix.mat = 0.3 * a.mat + 0.7 * b.mat;
  const auto pa = exact_outcome_distribution(a, ks, 5);
  const auto pb = exact_outcome_distribution(b, ks, 5);
  const auto pm = exact_outcome_distribution(mix, ks, 5);
  CHECK(total(pa) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pa.leakage < 1e-13);
  for (std::size_t i = 0; i < pm.probabilities.size(); ++i)
    CHECK(pm.probabilities[i] == doctest::Approx(0.3 * pa.probabilities[i] + 0.7 * pb.probabilities[i]).epsilon(1e-12));
  CHECK_THROWS(exact_outcome_distribution(a, ks, 11));
}

TEST_CASE("shift and total variation") {
  const auto ks = build_kraus(base(), 40);
  const auto rho = DensityMatrix::fock(40, 3);
  const auto p0 = exact_outcome_distribution(rho, ks, 3);
  CHECK(tv_distance(shifted_distribution(rho, ks, 0, 3), p0) == 0.0);

  const auto g = invariant_state(std::log(2.0), 40);
  const auto pg = exact_outcome_distribution(g, ks, 3);
  CHECK(tv_distance(shifted_distribution(g, ks, 50, 3), pg) < 1e-10);

  OutcomeDistribution x{1, {1, 0, 0, 0}, 0};
  OutcomeDistribution y{1, {0, 0.5, 0.5, 0}, 0};
  CHECK(tv_distance(x, y) == 1.0);
  CHECK(tv_distance(x, x) == 0.0);
}

TEST_CASE("invariant measure and its barycenter") {
  const auto nu = nu_inv_measure(std::log(2.0), 50);
  CHECK(nu.size() == 51);
  CHECK(std::accumulate(nu.weights.begin(), nu.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nu.tail_mass == doctest::Approx(std::pow(0.5, 51)).epsilon(1e-6));
  CHECK((nu.barycenter() - invariant_state(std::log(2.0), 50).mat).norm() < 1e-14);
  CHECK(exact_fock_label(nu.atom(7)) == 7);
  CHECK(exact_fock_label(make_initial_state("coherentlike:1,1", 5).mat) == -1);
}

TEST_CASE("push forward keeps a Fock-atom measure Fock and preserves nu_inv") {
  const auto ks = build_kraus(base(), 40);
  const auto nu = nu_inv_measure(std::log(2.0), 40);
  const auto next = push_forward(nu, ks);
  for (int k : next.fock) CHECK(k >= 0);
  CHECK(next.size() <= nu.size());
  CHECK(wasserstein1(next, nu) < 1e-9);
}

TEST_CASE("W1 between Fock-atom measures is twice the TV distance") {
  StateMeasure a, b;
  a.d = b.d = 6;
  a.fock = {0, 1, 2};
  a.weights = {0.5, 0.3, 0.2};
  a.support.resize(3);
  b.fock = {1, 2, 5};
  b.weights = {0.1, 0.6, 0.3};
  b.support.resize(3);
  // TV = (0.5 + 0.2 + 0.4 + 0.3) / 2 = 0.7
  CHECK(wasserstein1(a, b) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(wasserstein1(b, a) == doctest::Approx(wasserstein1(a, b)).epsilon(1e-12));
  CHECK(wasserstein1(a, a) == doctest::Approx(0.0));
  a.tail_mass = 0.01;
  CHECK(wasserstein1_with_tail(a, b) == doctest::Approx(1.42).epsilon(1e-12));
}

TEST_CASE("W1 triangle inequality on general states") {
  auto measure = [](std::initializer_list<const char*> specs) {
    std::vector<DensityMatrix> v;
    for (const char* s : specs) v.push_back(make_initial_state(s, 5));
    return empirical_state_measure(v);
  };
  const auto a = measure({"coherentlike:1,1", "fock:2", "fock:2"});
  const auto b = measure({"coherentlike:1,0,1", "fock:3"});
  const auto c = measure({"mixture:0:0.5,4:0.5", "coherentlike:1,2,3", "fock:1"});
  CHECK(a.size() == 2);  // the two |2> snapshots merge
  CHECK(a.weights[std::find(a.fock.begin(), a.fock.end(), 2) - a.fock.begin()] == doctest::Approx(2.0 / 3.0));
  CHECK(wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-12);
  const auto gc = ground_cost(a, b);
  CHECK(gc.rows() == 2);
  CHECK(gc.cols() == 2);
  const auto g2 = make_initial_state("fock:2", 5);
  const auto f3 = make_initial_state("fock:3", 5);
  CHECK(trace_norm(g2.mat - f3.mat) == doctest::Approx(2.0));
}
