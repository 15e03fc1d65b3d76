#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace maser {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a parameter set violates its invariants.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical inputs in angular-frequency units.
struct PhysicalParams {
  double epsilon = 1.0;   // atomic Bohr frequency, > 0
  double epsilon0 = 1.0;  // cavity mode frequency, > 0
  double lambda = 0.0;    // coupling
  double tau = 1.0;       // interaction time, > 0
  double beta = 1.0;      // inverse temperature, any sign

  double detuning() const { return epsilon - epsilon0; }
  void validate() const;
};

enum class Exactness { Float, ExactRational };

/// Dimensionless model parameters.
///
/// `xi` and `eta` drive every transition probability; `theta` = beta*epsilon
/// fixes the atomic populations; `phi` = tau*epsilon (mod 2pi) only enters the
/// phases of coherences. In exact mode `xi_exact`/`eta_exact` hold the same
/// values as reduced rationals and are the ones used for resonance decisions.
/// `injected_resonances` lists levels the caller declares resonant (used for the
/// simply-resonant case, which has no rational representation).
struct DimensionlessParams {
  double xi = 0.0;
  double eta = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  std::optional<Rational> xi_exact;
  std::optional<Rational> eta_exact;
  std::vector<long> injected_resonances;

  static DimensionlessParams exact(const Rational& xi, const Rational& eta, double theta, double phi);
  static DimensionlessParams floating(double xi, double eta, double theta, double phi);

  Exactness exactness() const {
    return xi_exact && eta_exact ? Exactness::ExactRational : Exactness::Float;
  }
  void validate() const;
};

struct AtomProbabilities {
  double p_minus = 0.5;
  double p_plus = 0.5;
};

DimensionlessParams derive_dimensionless(const PhysicalParams& phys);

/// p_minus = 1/(1+e^{-theta}); p_plus is its complement so the pair sums to 1 exactly.
AtomProbabilities atomic_probabilities(double theta);

/// Reduces an angle to [0, 2pi).
double wrap_phase(double angle);

/// Parses "p/q", "p" or a decimal literal ("0.25") into a reduced rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace maser
