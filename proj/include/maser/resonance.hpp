#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "maser/params.hpp"

namespace maser {

enum class Regime { NonResonant, FullyResonant, Injected };

const char* to_string(Regime r);

struct Resonance {
  long n = 0;      // level
  BigInt k = 0;    // xi*n + eta == k^2
  friend bool operator==(const Resonance&, const Resonance&) = default;
};

struct ResonanceSet {
  std::vector<Resonance> entries;  // sorted by n, unique
  long n_max = 0;
  Regime regime = Regime::NonResonant;

  std::vector<long> levels() const;
  bool contains(long n) const;
};

/// A closed integer interval [first, last]. `open_ended` marks a final sector
/// that continues past the enumeration bound.
struct Sector {
  long first = 0;
  long last = 0;
  bool open_ended = false;
  long size() const { return last - first + 1; }
  bool contains(long n) const { return n >= first && n <= last; }
  friend bool operator==(const Sector&, const Sector&) = default;
};

struct SectorPartition {
  std::vector<Sector> sectors;
  long n_max = 0;

  /// Index of the sector holding level n; n must lie in [0, n_max].
  std::size_t sector_of(long n) const;
};

struct DegeneracyReport {
  std::vector<long> n_set;  // N(xi, eta) restricted to [0, n_max - 1]
  bool degenerate = false;
  std::vector<std::pair<std::size_t, std::size_t>> matched_sector_pairs;
};

/// Classification of sqrt(xi*n + eta) for exact parameters.
struct RootClass {
  enum Kind { Integer, HalfOdd, Other } kind = Other;
  BigInt value = 0;  // k for Integer, the odd j with sqrt = j/2 for HalfOdd
};

/// Exact test of sqrt(xi*n + eta) against integers and half-odd integers.
RootClass classify_root(const Rational& xi, const Rational& eta, long n);

/// Integer square root test: returns r with r*r == v, if any.
std::optional<BigInt> exact_sqrt(const BigInt& v);

/// All n in [1, n_max] with xi*n + eta a square of a positive integer.
/// Throws ParameterError for Float-mode parameters.
ResonanceSet find_resonances(const DimensionlessParams& params, long n_max);

/// A ResonanceSet carrying caller-declared resonances (Injected regime).
ResonanceSet injected_resonances(std::vector<long> levels, long n_max);

/// The resonance set a model uses: exact enumeration in ExactRational mode,
/// the injected list otherwise (empty means non-resonant).
ResonanceSet resonances_for(const DimensionlessParams& params, long n_max);

Regime classify_regime(const ResonanceSet& rs);

/// Contiguous partition of {0..n_max} cut at every resonance <= n_max.
SectorPartition sector_partition(const ResonanceSet& rs, long n_max);

/// N(xi, eta) = {n in {0} u R : n+1 in R}, restricted to [0, rs.n_max - 1].
/// Matched pairs list same-length sectors whose transition probabilities alpha agree.
DegeneracyReport degenerate_set(const ResonanceSet& rs);
DegeneracyReport degenerate_set(const ResonanceSet& rs, const DimensionlessParams& params,
                                double tol = 1e-12);

struct DegenerateCase {
  long xi = 0;
  long eta = 0;
  std::vector<long> n_set;
};

/// Scans the integer grid xi in [1, xi_max], eta in [0, eta_max] for pairs
/// with |N(xi, eta) cap [0, n_max-1]| >= 2.
///
/// Integer grids are complete for rational parameters: if n and n+1 are both
/// resonances then xi = l^2 - k^2 and eta = k^2 - xi*n are integers.
std::vector<DegenerateCase> search_degenerate(long xi_max, long eta_max, long n_max);

}  // namespace maser
