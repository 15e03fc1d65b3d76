#include "maser/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace maser {

namespace mp = boost::multiprecision;

const char* to_string(Regime r) {
  switch (r) {
    case Regime::NonResonant: return "NonResonant";
    case Regime::FullyResonant: return "FullyResonant";
    case Regime::Injected: return "Injected";
  }
  return "?";
}

std::vector<long> ResonanceSet::levels() const {
  std::vector<long> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.n);
  return out;
}

bool ResonanceSet::contains(long n) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const Resonance& r, long v) { return r.n < v; });
  return it != entries.end() && it->n == n;
}

std::size_t SectorPartition::sector_of(long n) const {
  auto it = std::upper_bound(sectors.begin(), sectors.end(), n,
                             [](long v, const Sector& s) { return v < s.first; });
  return static_cast<std::size_t>(std::distance(sectors.begin(), it)) - 1;
}

std::optional<BigInt> exact_sqrt(const BigInt& v) {
  if (v < 0) return std::nullopt;
  BigInt r = mp::sqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

RootClass classify_root(const Rational& xi, const Rational& eta, long n) {
  const Rational value = xi * n + eta;
  const BigInt num = mp::numerator(value);
  const BigInt den = mp::denominator(value);
  RootClass out;
  // value = num/den in lowest terms: sqrt is rational iff both are squares.
  auto rn = exact_sqrt(num);
  auto rd = exact_sqrt(den);
  if (!rn || !rd) return out;
  if (*rd == 1) {
    out.kind = RootClass::Integer;
    out.value = *rn;
  } else if (*rd == 2) {
    // num/4 with num odd might be (j/2)^2, j odd.
    out.kind = RootClass::HalfOdd;
    out.value = *rn;
  }
  return out;
}

ResonanceSet find_resonances(const DimensionlessParams& params, long n_max) {
  if (params.exactness() != Exactness::ExactRational)
    throw ParameterError("resonance detection requires exact rational xi and eta");
  if (n_max < 1) throw ParameterError("n_max must be >= 1");
  const Rational& xi = *params.xi_exact;
  const Rational& eta = *params.eta_exact;

  // Clear denominators: xi*n + eta = (a*n + c) / L with L = lcm of denominators.
  const BigInt dx = mp::denominator(xi);
  const BigInt de = mp::denominator(eta);
  const BigInt lcm = mp::lcm(dx, de);
  const BigInt a = mp::numerator(xi) * (lcm / dx);
  const BigInt c = mp::numerator(eta) * (lcm / de);

  ResonanceSet rs;
  rs.n_max = n_max;
  BigInt num = a + c;
  for (long n = 1; n <= n_max; ++n, num += a) {
    if (num % lcm != 0) continue;
    const BigInt q = num / lcm;
    if (q <= 0) continue;
    if (auto k = exact_sqrt(q)) rs.entries.push_back({n, *k});
  }
  rs.regime = rs.entries.empty() ? Regime::NonResonant : Regime::FullyResonant;
  return rs;
}

ResonanceSet injected_resonances(std::vector<long> levels, long n_max) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  ResonanceSet rs;
  rs.n_max = n_max;
  rs.regime = Regime::Injected;
  for (long n : levels) {
    if (n < 1) throw ParameterError("injected resonances must be positive");
    if (n <= n_max) rs.entries.push_back({n, 0});
  }
  return rs;
}

ResonanceSet resonances_for(const DimensionlessParams& params, long n_max) {
  if (params.exactness() == Exactness::ExactRational) {
    ResonanceSet rs = find_resonances(params, n_max);
    if (!params.injected_resonances.empty()) {
      for (long n : params.injected_resonances)
        if (n <= n_max && !rs.contains(n)) rs.entries.push_back({n, 0});
      std::sort(rs.entries.begin(), rs.entries.end(), [](auto& l, auto& r) { return l.n < r.n; });
      rs.regime = Regime::Injected;
    }
    return rs;
  }
  if (params.injected_resonances.empty()) {
    ResonanceSet rs;
    rs.n_max = n_max;
    return rs;
  }
  return injected_resonances(params.injected_resonances, n_max);
}

Regime classify_regime(const ResonanceSet& rs) {
  if (rs.regime == Regime::Injected) return Regime::Injected;
  return rs.entries.empty() ? Regime::NonResonant : Regime::FullyResonant;
}

SectorPartition sector_partition(const ResonanceSet& rs, long n_max) {
  SectorPartition part;
  part.n_max = n_max;
  long start = 0;
  for (const auto& r : rs.entries) {
    if (r.n > n_max) break;
    part.sectors.push_back({start, r.n - 1, false});
    start = r.n;
  }
  // The last sector is bounded only if a known resonance closes it at n_max+1.
  const bool closed = rs.contains(n_max + 1);
  part.sectors.push_back({start, n_max, !closed});
  return part;
}

namespace {

std::vector<long> n_set_of(const ResonanceSet& rs) {
  std::vector<long> out;
  if (rs.contains(1)) out.push_back(0);
  for (const auto& r : rs.entries)
    if (r.n + 1 <= rs.n_max && rs.contains(r.n + 1) && r.n <= rs.n_max - 1) out.push_back(r.n);
  return out;
}

double alpha_value(const DimensionlessParams& p, long n) {
  const double x2 = p.xi * static_cast<double>(n) + p.eta;
  if (n == 0 || x2 <= 0.0) return 0.0;
  const double s = std::sin(std::numbers::pi * std::sqrt(x2));
  return s * s * p.xi * static_cast<double>(n) / x2;
}

}  // namespace

DegeneracyReport degenerate_set(const ResonanceSet& rs) {
  DegeneracyReport rep;
  rep.n_set = n_set_of(rs);
  rep.degenerate = rep.n_set.size() >= 2;
  return rep;
}

DegeneracyReport degenerate_set(const ResonanceSet& rs, const DimensionlessParams& params, double tol) {
  DegeneracyReport rep = degenerate_set(rs);
  const SectorPartition part = sector_partition(rs, rs.n_max);
  for (std::size_t i = 0; i < part.sectors.size(); ++i) {
    for (std::size_t j = i + 1; j < part.sectors.size(); ++j) {
      const Sector& a = part.sectors[i];
      const Sector& b = part.sectors[j];
      if (a.size() != b.size() || a.open_ended || b.open_ended) continue;
      // Same transition probabilities: alpha agrees on first..last+1.
      bool same = true;
      for (long off = 0; off <= a.size() && same; ++off)
        same = std::abs(alpha_value(params, a.first + off) - alpha_value(params, b.first + off)) <= tol;
      if (same) rep.matched_sector_pairs.emplace_back(i, j);
    }
  }
  return rep;
}

std::vector<DegenerateCase> search_degenerate(long xi_max, long eta_max, long n_max) {
  std::vector<DegenerateCase> out;
  if (xi_max < 1 || eta_max < 0 || n_max < 2) return out;
  for (long xi = 1; xi <= xi_max; ++xi) {
    for (long eta = 0; eta <= eta_max; ++eta) {
      const auto params = DimensionlessParams::exact(Rational(xi), Rational(eta), 1.0, 0.0);
      const ResonanceSet rs = find_resonances(params, n_max);
      auto rep = degenerate_set(rs);
      if (rep.degenerate) out.push_back({xi, eta, std::move(rep.n_set)});
    }
  }
  return out;
}

}  // namespace maser
