#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tatami/boundary.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/flips.hpp"

using namespace tatami;

namespace {

std::vector<Tiling> with_monomers(int n, int m) {
  std::vector<Tiling> out;
  for (Tiling& t : enumerate_tilings(n, n))
    if (t.monomers() == m) out.push_back(std::move(t));
  return out;
}

}  // namespace

TEST_CASE("strip diagonal") {
  const Tiling t = decode_text("MLR\n");
  const auto ds = find_diagonals(t, {1, 1});
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].end() == Cell{1, 3});
  const Tiling f = flip_diagonal(t, ds[0]);
  CHECK(encode_text(f) == "LRM\n");
  CHECK(flip_diagonal(f, reversed(ds[0])) == t);
}

TEST_CASE("interior monomers have no diagonal") {
  const Tiling t = decode_text("LRT\nTMB\nBLR\n");
  CHECK(find_diagonals(t, {2, 2}).empty());
  CHECK_THROWS_AS(find_diagonals(t, {1, 1}), InvalidDiagonal);
}

TEST_CASE("flips are involutions that keep the monomer count") {
  for (int n = 2; n <= 5; ++n)
    for (const Tiling& t : with_monomers(n, n))
      for (Cell m : t.monomer_cells())
        for (const Diagonal& d : find_diagonals(t, m)) {
          CAPTURE(encode_text(t));
          const Tiling f = flip_diagonal(t, d);
          CHECK(tatami_valid(f));
          CHECK(f.monomers() == n);
          CHECK(f.is_monomer(d.end()));
          CHECK_FALSE(f.is_monomer(m));
          CHECK(flip_diagonal(f, reversed(d)) == t);
        }
}

TEST_CASE("a diagonal that is not present is rejected") {
  const Tiling t = decode_text("MLR\n");
  Diagonal d = find_diagonals(t, {1, 1}).front();
  CHECK_THROWS_AS(flip_diagonal(flip_diagonal(t, d), d), InvalidDiagonal);
}

TEST_CASE("every square tiling with n monomers reaches a trivial one") {
  for (int n = 1; n <= 6; ++n)
    for (const Tiling& t : with_monomers(n, n)) {
      CAPTURE(encode_text(t));
      const Canonicalization c = canonicalize(t);
      CHECK(is_trivial_tiling(c.trivial));
      Tiling cur = t;
      int area = central_bond_area(cur);
      std::vector<Cell> moved;
      for (const Diagonal& d : c.flips) {
        CHECK(std::find(moved.begin(), moved.end(), d.monomer) == moved.end());
        cur = flip_diagonal(cur, d);
        moved.push_back(d.end());
        const int next = central_bond_area(cur);
        CHECK(next > area);
        area = next;
      }
      CHECK(cur == c.trivial);
      if (is_trivial_tiling(t)) CHECK(c.flips.empty());
    }
}

TEST_CASE("canonicalize preconditions") {
  CHECK_THROWS_AS(canonicalize(decode_text("LR\nLR\n")), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize(decode_text("MLR\n")), std::invalid_argument);
}
