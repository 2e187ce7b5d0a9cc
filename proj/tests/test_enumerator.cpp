#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "tatami/boundary.hpp"
#include "tatami/enumerator.hpp"

using namespace tatami;

TEST_CASE("per-monomer counts agree with exhaustive search") {
  for (int r = 1; r <= 5; ++r)
    for (int c = 1; c <= 5; ++c) {
      if (r * c > 20) continue;
      CAPTURE(r);
      CAPTURE(c);
      const auto want = oracle::by_monomers(r, c);
      const CountTable got = count_by_monomers(r, c);
      REQUIRE(got.size() == want.size());
      for (const auto& [m, n] : want) CHECK(got.at(m) == BigInt(n));
    }
}

TEST_CASE("vertical dimer refinement") {
  for (auto [r, c] : {std::pair{2, 3}, {3, 3}, {3, 4}, {4, 4}}) {
    std::map<std::pair<int, int>, long long> want;
    oracle::all_tilings(r, c, {}, [&](const oracle::Fill& f) { ++want[{f.monomers(), f.vdimers()}]; });
    const auto got = count_by_monomers_and_vdimers(r, c);
    REQUIRE(got.size() == want.size());
    for (const auto& [k, n] : want) CHECK(got.at(k) == BigInt(n));
  }
}

TEST_CASE("enumerated tilings are distinct and valid") {
  std::set<std::string> oracle_texts;
  oracle::all_tilings(4, 4, {}, [&](const oracle::Fill& f) { oracle_texts.insert(f.text()); });
  const auto all = enumerate_tilings(4, 4);
  std::set<std::string> texts;
  for (const Tiling& t : all) {
    CHECK(tatami_valid(t));
    texts.insert(encode_text(t));
  }
  CHECK(texts.size() == all.size());
  CHECK(texts == oracle_texts);
}

TEST_CASE("canonical order is sorted") {
  const auto v = enumerate_tilings(3, 4, {kDefaultCellBudget, true});
  CHECK(std::is_sorted(v.begin(), v.end(),
                       [](const Tiling& a, const Tiling& b) { return encode_text(a) < encode_text(b); }));
  CHECK(v.size() == enumerate_tilings(3, 4).size());
}

TEST_CASE("one-wide strips follow a Fibonacci-like count") {
  // strips with no interior vertices: every monomer/dimer sequence counts
  std::vector<long long> f{1, 1};
  for (int n = 2; n <= 20; ++n) f.push_back(f[n - 1] + f[n - 2]);
  for (int n = 1; n <= 20; ++n) CHECK(total(count_by_monomers(1, n)) == BigInt(f[static_cast<std::size_t>(n)]));
}

TEST_CASE("empty grid has one tiling") {
  CHECK(enumerate_tilings(0, 5).size() == 1);
  CHECK(total(count_by_monomers(3, 0)) == 1);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(count_by_monomers(7, 7, 42), BudgetExceeded);
  CHECK_THROWS_AS(count_by_monomers(-1, 2), std::invalid_argument);
}

TEST_CASE("boundary-constrained enumeration") {
  for (const Tiling& t : enumerate_tilings(3, 4)) {
    const auto hits = enumerate_with_boundary(boundary_of(t));
    CHECK(std::find(hits.begin(), hits.end(), t) != hits.end());
    for (const Tiling& h : hits) CHECK(boundary_of(h) == boundary_of(t));
  }
}
