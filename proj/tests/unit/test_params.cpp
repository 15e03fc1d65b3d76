#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maser/params.hpp"

using namespace maser;

TEST_CASE("derive_dimensionless basic cases") {
  PhysicalParams p;
  p.epsilon = 2.0;
  p.epsilon0 = 2.0;
  p.lambda = std::numbers::pi;
  p.tau = 1.0;
  p.beta = 0.5;
  auto d = derive_dimensionless(p);
  CHECK(d.eta == 0.0);
  CHECK(d.xi == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.theta == doctest::Approx(1.0));
  CHECK(d.phi == doctest::Approx(2.0));
  CHECK(d.exactness() == Exactness::Float);

  p.epsilon = 10.0;
  p.epsilon0 = 10.0 - 2.0 * std::numbers::pi;  // detuning * tau = 2 pi
  d = derive_dimensionless(p);
  CHECK(d.eta == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derive_dimensionless is scale consistent") {
  PhysicalParams a{1.7, 1.2, 0.9, 0.8, 0.3};
  PhysicalParams b = a;
  const double c = 3.5;
  b.lambda *= c;
  b.epsilon *= c;
  b.epsilon0 *= c;
  b.tau /= c;
  b.beta /= c;
  const auto da = derive_dimensionless(a);
  const auto db = derive_dimensionless(b);
  CHECK(db.xi == doctest::Approx(da.xi).epsilon(1e-14));
  CHECK(db.eta == doctest::Approx(da.eta).epsilon(1e-14));
  CHECK(db.theta == doctest::Approx(da.theta).epsilon(1e-14));
}

TEST_CASE("physical parameters are validated") {
  PhysicalParams p;
  p.tau = 0.0;
  CHECK_THROWS_AS(derive_dimensionless(p), ParameterError);
  p = PhysicalParams{};
  p.epsilon = -1.0;
  CHECK_THROWS_AS(derive_dimensionless(p), ParameterError);
}

TEST_CASE("atomic probabilities") {
  auto a = atomic_probabilities(0.0);
  CHECK(a.p_minus == 0.5);
  CHECK(a.p_plus == 0.5);
  a = atomic_probabilities(std::log(2.0));
  CHECK(a.p_minus == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(a.p_plus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  a = atomic_probabilities(800.0);
  CHECK(a.p_minus == 1.0);
  CHECK(a.p_plus == 0.0);
  a = atomic_probabilities(-800.0);
  CHECK(a.p_minus == 0.0);
  CHECK(a.p_plus == 1.0);
  for (double t = -40.0; t <= 40.0; t += 0.37) {
    a = atomic_probabilities(t);
    CHECK(a.p_minus + a.p_plus == 1.0);
    CHECK((a.p_minus >= a.p_plus) == (t >= 0.0));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("24") == Rational(24));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("024") == Rational(24));
  CHECK(parse_rational("1/08") == Rational(1, 8));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("-3/9") == Rational(-1, 3));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK_THROWS_AS(parse_rational(""), ParameterError);
}

TEST_CASE("dimensionless params") {
  const auto p = DimensionlessParams::exact(Rational(2, 4), Rational(1, 3), 1.0, 7.0);
  CHECK(p.exactness() == Exactness::ExactRational);
  CHECK(*p.xi_exact == Rational(1, 2));
  CHECK(p.xi == 0.5);
  CHECK(p.phi == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK_THROWS_AS(DimensionlessParams::floating(-1.0, 0.0, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(DimensionlessParams::exact(Rational(1), Rational(-1), 1.0, 0.0), ParameterError);
}

TEST_CASE("wrap_phase") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(-0.5) == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  CHECK(wrap_phase(13.0) >= 0.0);
  CHECK(wrap_phase(13.0) < 2.0 * std::numbers::pi);
}
