#include <doctest.h>

#include "maser/oracles/resonance_scan.hpp"
#include "maser/resonance.hpp"

using namespace maser;

namespace {
DimensionlessParams ex(long xn, long xd, long en, long ed) {
  return DimensionlessParams::exact(Rational(xn, xd), Rational(en, ed), 1.0, 0.0);
}
}  // namespace

TEST_CASE("find_resonances on the degenerate pair") {
  const auto rs = find_resonances(ex(24, 1, 1, 1), 30);
  CHECK(rs.levels() == std::vector<long>{1, 2, 5, 7, 12, 15, 22, 26});
  CHECK(rs.entries[0].k == 5);
  CHECK(rs.entries[1].k == 7);
  CHECK(rs.regime == Regime::FullyResonant);
  CHECK(rs.contains(12));
  CHECK_FALSE(rs.contains(13));
}

TEST_CASE("find_resonances agrees with k-enumeration") {
  for (long xn = 1; xn <= 30; ++xn)
    for (long xd : {1L, 2L, 3L, 7L})
      for (long en = 0; en <= 12; ++en)
        for (long ed : {1L, 4L, 5L}) {
          const auto got = find_resonances(ex(xn, xd, en, ed), 300).levels();
          const Rational xi(xn, xd), eta(en, ed);
          const auto want = oracle::resonances_by_k(static_cast<long>(boost::multiprecision::numerator(xi)),
                                                    static_cast<long>(boost::multiprecision::denominator(xi)),
                                                    static_cast<long>(boost::multiprecision::numerator(eta)),
                                                    static_cast<long>(boost::multiprecision::denominator(eta)), 300);
          REQUIRE(got == want);
        }
}

TEST_CASE("float parameters cannot enumerate resonances") {
  CHECK_THROWS_AS(find_resonances(DimensionlessParams::floating(24.0, 1.0, 1.0, 0.0), 30), ParameterError);
  auto p = DimensionlessParams::floating(2.0, 0.3, 1.0, 0.0);
  CHECK(resonances_for(p, 30).entries.empty());
  CHECK(classify_regime(resonances_for(p, 30)) == Regime::NonResonant);
  p.injected_resonances = {4, 9};
  const auto rs = resonances_for(p, 30);
  CHECK(rs.regime == Regime::Injected);
  CHECK(rs.levels() == std::vector<long>{4, 9});
}

TEST_CASE("exact root classification") {
  CHECK(classify_root(Rational(24), Rational(1), 1).kind == RootClass::Integer);
  CHECK(classify_root(Rational(24), Rational(1), 1).value == 5);
  // xi n + eta = 9/4 -> sqrt = 3/2
  const auto r = classify_root(Rational(1, 4), Rational(2), 1);
  CHECK(r.kind == RootClass::HalfOdd);
  CHECK(r.value == 3);
  CHECK(classify_root(Rational(1, 2), Rational(1, 3), 5).kind == RootClass::Other);
  CHECK(exact_sqrt(BigInt(144)).value() == 12);
  CHECK_FALSE(exact_sqrt(BigInt(145)).has_value());
  BigInt big = BigInt(1) << 200;
  CHECK(exact_sqrt(big * big).value() == big);
}

TEST_CASE("sector partition") {
  const auto rs = find_resonances(ex(1, 1, 0, 1), 25);  // squares
  const auto part = sector_partition(rs, 24);
  REQUIRE(part.sectors.size() == 5);
  CHECK(part.sectors[0] == Sector{0, 0, false});
  CHECK(part.sectors[1] == Sector{1, 3, false});
  CHECK(part.sectors[2] == Sector{4, 8, false});
  CHECK(part.sectors[4] == Sector{16, 24, false});  // 25 is a resonance
  CHECK(part.sector_of(6) == 2);
  const auto open = sector_partition(find_resonances(ex(1, 1, 0, 1), 20), 20);
  CHECK(open.sectors.back().open_ended);
  CHECK(sector_partition(ResonanceSet{}, 10).sectors.size() == 1);
}

TEST_CASE("degenerate set") {
  const auto p = ex(24, 1, 1, 1);
  const auto rs = find_resonances(p, 30);
  const auto rep = degenerate_set(rs, p);
  CHECK(rep.n_set == std::vector<long>{0, 1});
  CHECK(rep.degenerate);
  REQUIRE_FALSE(rep.matched_sector_pairs.empty());
  CHECK(rep.matched_sector_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});

  const auto nd = degenerate_set(find_resonances(ex(1, 2, 1, 3), 100));
  CHECK(nd.n_set.empty());
  CHECK_FALSE(nd.degenerate);
}

TEST_CASE("printed degenerate examples under the literal definition") {
  // N(840,1) literally is {0,1,52}; the printed list omits 0.
  CHECK(degenerate_set(find_resonances(ex(840, 1, 1, 1), 100)).n_set == std::vector<long>{0, 1, 52});
  // N(724,241): no consecutive resonances below 100, not {1,2} as printed.
  CHECK(degenerate_set(find_resonances(ex(724, 1, 241, 1), 100)).n_set.empty());
}

TEST_CASE("tuned cavity has no consecutive resonances above 0") {
  for (long xn = 1; xn <= 50; ++xn)
    for (long xd = 1; xd <= 5; ++xd) {
      const auto rs = find_resonances(ex(xn, xd, 0, 1), 500);
      CHECK(oracle::no_consecutive(rs.levels()));
      for (long n : degenerate_set(rs).n_set) CHECK(n == 0);
    }
}

TEST_CASE("search_degenerate") {
  const auto found = search_degenerate(30, 5, 40);
  bool has_24_1 = false;
  for (const auto& c : found) {
    if (c.xi == 24 && c.eta == 1) has_24_1 = true;
    CHECK(c.n_set.size() >= 2);
    const auto lv = oracle::resonances_by_k(c.xi, c.eta, 41);
    for (long n : c.n_set) {
      const bool n_res = n == 0 || std::find(lv.begin(), lv.end(), n) != lv.end();
      CHECK(n_res);
      CHECK(std::find(lv.begin(), lv.end(), n + 1) != lv.end());
    }
  }
  CHECK(has_24_1);
}
