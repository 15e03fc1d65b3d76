#include "maser/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maser {

void PhysicalParams::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (!(epsilon0 > 0.0)) throw ParameterError("epsilon0 must be > 0");
  if (!(tau > 0.0)) throw ParameterError("tau must be > 0");
  if (!std::isfinite(lambda) || !std::isfinite(beta)) throw ParameterError("lambda and beta must be finite");
}

void DimensionlessParams::validate() const {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ParameterError("xi must be finite and >= 0");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ParameterError("eta must be finite and >= 0");
  if (!std::isfinite(theta)) throw ParameterError("theta must be finite");
  if (!std::isfinite(phi)) throw ParameterError("phi must be finite");
  if (xi_exact.has_value() != eta_exact.has_value())
    throw ParameterError("exact mode needs both xi and eta as rationals");
  if (xi_exact && (*xi_exact < 0 || *eta_exact < 0)) throw ParameterError("exact xi, eta must be >= 0");
  for (long n : injected_resonances)
    if (n < 1) throw ParameterError("injected resonances must be positive levels");
}

DimensionlessParams DimensionlessParams::exact(const Rational& xi, const Rational& eta, double theta,
                                               double phi) {
  DimensionlessParams p;
  p.xi_exact = xi;
  p.eta_exact = eta;
  p.xi = static_cast<double>(xi);
  p.eta = static_cast<double>(eta);
  p.theta = theta;
  p.phi = wrap_phase(phi);
  p.validate();
  return p;
}

DimensionlessParams DimensionlessParams::floating(double xi, double eta, double theta, double phi) {
  DimensionlessParams p;
  p.xi = xi;
  p.eta = eta;
  p.theta = theta;
  p.phi = wrap_phase(phi);
  p.validate();
  return p;
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

DimensionlessParams derive_dimensionless(const PhysicalParams& phys) {
  phys.validate();
  const double pi = std::numbers::pi;
  const double dt = phys.detuning() * phys.tau / (2.0 * pi);
  const double lt = phys.lambda * phys.tau / pi;
  return DimensionlessParams::floating(lt * lt, dt * dt, phys.beta * phys.epsilon, phys.tau * phys.epsilon);
}

AtomProbabilities atomic_probabilities(double theta) {
  if (!std::isfinite(theta)) throw ParameterError("theta must be finite");
  AtomProbabilities p;
  // 1/(1+e^{-theta}) without overflow for large negative theta.
  if (theta >= 0.0) {
    p.p_minus = 1.0 / (1.0 + std::exp(-theta));
  } else {
    const double e = std::exp(theta);
    p.p_minus = e / (1.0 + e);
  }
  p.p_plus = 1.0 - p.p_minus;
  return p;
}

namespace {

// Decimal only: BigInt(string) would read a leading zero as octal.
BigInt decimal_integer(std::string digits) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad digits");
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  const BigInt v(digits);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParameterError("empty rational literal");
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      const BigInt num = decimal_integer(text.substr(0, slash));
      const BigInt den = decimal_integer(text.substr(slash + 1));
      if (den == 0) throw ParameterError("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad digits");
      BigInt den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      return Rational(decimal_integer(text.substr(0, dot) + frac), den);
    }
    return Rational(decimal_integer(text));
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError("not a rational literal: '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace maser
