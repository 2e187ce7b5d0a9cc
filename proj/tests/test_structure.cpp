#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tatami/boundary.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/structure.hpp"

using namespace tatami;

TEST_CASE("pinwheel has one counter-clockwise vortex") {
  const FeatureDiagram d = extract_features(decode_text("LRT\nTMB\nBLR\n"));
  REQUIRE(d.features.size() == 1);
  CHECK(d.features[0].kind == SourceKind::VortexCCW);
  CHECK(d.features[0].anchor == Cell{2, 2});
  const FeatureDiagram m = extract_features(decode_text("TLR\nBMT\nLRB\n"));
  REQUIRE(m.features.size() == 1);
  CHECK(m.features[0].kind == SourceKind::VortexCW);
}

TEST_CASE("running bond is trivial") {
  const Tiling t = decode_text("LRLR\nMLRM\nLRLR\n");
  REQUIRE(tatami_valid(t));
  CHECK(extract_features(t).trivial());
}

TEST_CASE("diagram text round trip") {
  for (const Tiling& t : enumerate_tilings(4, 4)) {
    const FeatureDiagram d = extract_features(t);
    CHECK(decode_diagram(encode_diagram(d)) == d);
  }
  CHECK_THROWS_AS(decode_diagram("3 3\nSPIRAL 1 1\n"), ParseError);
  CHECK_THROWS_AS(decode_diagram("3 3\nVEE 1\n"), ParseError);
}

TEST_CASE("render recovers the tiling from its diagram") {
  for (auto [r, c] : {std::pair{3, 3}, {3, 4}, {4, 4}, {4, 5}, {2, 6}}) {
    const auto all = enumerate_tilings(r, c);
    std::map<FeatureDiagram, std::vector<Tiling>> by_diagram;
    for (const Tiling& t : all) by_diagram[extract_features(t)].push_back(t);
    for (const auto& [d, group] : by_diagram) {
      CAPTURE(encode_diagram(d));
      std::vector<Tiling> got = render(d);
      std::vector<Tiling> want = group;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
      if (!d.trivial()) CHECK(got.size() == 1);
      CHECK(validate_diagram(d).valid());
    }
  }
}

TEST_CASE("validation agrees with render on small diagrams") {
  for (auto [r, c] : {std::pair{3, 4}, {4, 5}}) {
    const auto cands = candidate_features(r, c);
    auto check = [&](const FeatureDiagram& d) {
      CAPTURE(encode_diagram(d));
      CHECK(validate_diagram(d).valid() == !render(d).empty());
    };
    for (std::size_t i = 0; i < cands.size(); ++i) {
      check({r, c, {cands[i]}});
      for (std::size_t j = i + 1; j < cands.size(); ++j) check({r, c, {cands[i], cands[j]}});
    }
  }
}

TEST_CASE("rays of the pinwheel reach the boundary") {
  const FeatureDiagram d = extract_features(decode_text("LRT\nTMB\nBLR\n"));
  const auto tr = trace_rays(d);
  CHECK(tr.ok());
  CHECK(tr.rays.size() == 4);
  for (const Ray& ray : tr.rays) {
    const Tile& last = ray.tiles.back();
    bool touches = false;
    for (Cell x : last.cells()) touches |= on_boundary(3, 3, x);
    CHECK(touches);
  }
}

TEST_CASE("invalid diagrams are reported") {
  FeatureDiagram d{3, 3, {{SourceKind::VortexCW, {2, 2}}, {SourceKind::VortexCCW, {2, 2}}}};
  d.normalize();
  CHECK_FALSE(validate_diagram(d).valid());
  CHECK(render(d).empty());
  FeatureDiagram out{3, 3, {{SourceKind::VortexCW, {3, 3}}}};
  CHECK_FALSE(validate_diagram(out).valid());
}

TEST_CASE("boundary reconstruction") {
  for (auto [r, c] : {std::pair{1, 6}, {2, 5}, {3, 3}, {3, 5}, {4, 4}, {4, 5}})
    for (const Tiling& t : enumerate_tilings(r, c)) {
      CAPTURE(encode_text(t));
      CHECK(reconstruct_from_boundary(boundary_of(t)) == t);
      CHECK(enumerate_with_boundary(boundary_of(t)).size() == 1);
    }
}

TEST_CASE("unrealisable boundaries are refused") {
  BoundaryLabels b = boundary_of(decode_text("LRT\nTMB\nBLR\n"));
  b.labels[0] = monomer(1, 1);
  b.labels[1] = monomer(1, 2);
  CHECK_THROWS_AS(reconstruct_from_boundary(b), NotRealizable);
  BoundaryLabels short_ring{3, 3, {monomer(1, 1)}};
  CHECK_THROWS_AS(reconstruct_from_boundary(short_ring), NotRealizable);
  BoundaryLabels wrong_cell = boundary_of(decode_text("LRT\nTMB\nBLR\n"));
  wrong_cell.labels[0] = monomer(2, 2);
  CHECK_THROWS_AS(reconstruct_from_boundary(wrong_cell), NotRealizable);
}
