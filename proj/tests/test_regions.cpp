#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/features.hpp"
#include "tatami/regions.hpp"

using namespace tatami;

namespace {

CellRegion random_region(std::mt19937& rng) {
  std::uniform_int_distribution<int> side(1, 6);
  std::bernoulli_distribution keep(0.7);
  for (;;) {
    CellRegion r{side(rng), side(rng), {}};
    for (int i = 0; i < r.rows * r.cols; ++i) r.mask.push_back(keep(rng) ? 1 : 0);
    if (r.size() >= 1 && r.size() <= 20) return r;
  }
}

}  // namespace

TEST_CASE("mask parsing") {
  const CellRegion r = parse_region("##.\n###\n");
  CHECK(r.rows == 2);
  CHECK(r.cols == 3);
  CHECK(r.size() == 5);
  CHECK_FALSE(r.contains({1, 3}));
  CHECK(encode_region(r) == "##.\n###\n");
  CHECK(parse_region("#\n###\n").size() == 4);
  CHECK_THROWS_AS(parse_region("#x#\n"), ParseError);
  CHECK(CellRegion::rectangle(2, 3).full());
}

TEST_CASE("single cell") {
  CHECK(enumerate_region(CellRegion::rectangle(1, 1)).size() == 1);
}

TEST_CASE("rectangles match the grid enumerator") {
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 5; ++c) CHECK(enumerate_region(CellRegion::rectangle(r, c)).size() == enumerate_tilings(r, c).size());
}

TEST_CASE("minimum monomers on small fixtures") {
  const MinMonomerResult sq = min_monomers(CellRegion::rectangle(3, 3));
  CHECK(sq.m_star == 1);
  const FeatureDiagram d = extract_features(sq.witness);
  REQUIRE(d.features.size() == 1);
  CHECK((d.features[0].kind == SourceKind::VortexCW || d.features[0].kind == SourceKind::VortexCCW));
  CHECK(min_monomers(CellRegion::rectangle(2, 3)).m_star == 0);
  const MinMonomerResult l = min_monomers(parse_region("##.\n###\n"));
  CHECK(l.m_star == 1);
  CHECK(l.witness.monomers() == 1);
  CHECK(tatami_valid(l.witness));
}

TEST_CASE("disconnected region") {
  const CellRegion r = parse_region("##.##\n");
  CHECK(enumerate_region(r).size() == 4);
  CHECK(min_monomers(r).m_star == 0);
}

TEST_CASE("random regions against exhaustive search") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 50; ++trial) {
    const CellRegion region = random_region(rng);
    CAPTURE(encode_region(region));
    const auto want = oracle::by_monomers(region.rows, region.cols, region.mask);
    long long n = 0;
    for (const auto& [m, k] : want) {
      CHECK(m % 2 == region.size() % 2);
      n += k;
    }
    const auto all = enumerate_region(region);
    CHECK(static_cast<long long>(all.size()) == n);
    const MinMonomerResult res = min_monomers(region);
    CHECK(res.m_star == want.begin()->first);
    CHECK(res.m_star % 2 == region.size() % 2);
    CHECK(res.witness.monomers() == res.m_star);
    CHECK(tatami_valid(res.witness));
    CHECK(res.witness.cell_count() == region.size());
  }
}

TEST_CASE("region budget") {
  CHECK_THROWS_AS(min_monomers(CellRegion::rectangle(7, 7), 42), BudgetExceeded);
}
