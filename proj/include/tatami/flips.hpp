#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tatami/features.hpp"
#include "tatami/grid.hpp"
#include "tatami/rays.hpp"
#include "tatami/structure.hpp"

namespace tatami {

/// A boundary monomer and a chain of dimers stepping alternately along two
/// axes (a straight chain only in one-wide grids). cells[0] is the monomer,
/// dimers cover cells[1..2], cells[3..4], ...; the last cell is on the
/// boundary.
struct Diagonal {
  Cell monomer;
  RayDir dir = RayDir::NE;
  std::vector<Cell> cells;

  Cell end() const { return cells.back(); }
  int length() const { return static_cast<int>(cells.size() / 2); }
  friend bool operator==(const Diagonal&, const Diagonal&) = default;
};

class InvalidDiagonal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Tile pair_tile(Cell a, Cell b) {
  if (a.row == b.row) return hdimer(a.row, std::min(a.col, b.col));
  return vdimer(std::min(a.row, b.row), a.col);
}

inline bool adjacent(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1; }

inline bool diagonal_present(const Tiling& t, const Diagonal& d) {
  if (d.cells.size() < 3 || d.cells.size() % 2 == 0 || d.cells.front() != d.monomer) return false;
  for (std::size_t i = 1; i < d.cells.size(); ++i)
    if (!t.in_region(d.cells[i]) || !adjacent(d.cells[i - 1], d.cells[i])) return false;
  if (!t.is_monomer(d.monomer)) return false;
  for (std::size_t i = 1; i + 1 < d.cells.size(); i += 2)
    if (!has_tile(t, pair_tile(d.cells[i], d.cells[i + 1]))) return false;
  return true;
}

inline Tiling apply_flip(const Tiling& t, const Diagonal& d) {
  std::vector<Tile> drop, add;
  drop.push_back(monomer(d.monomer.row, d.monomer.col));
  for (std::size_t i = 1; i + 1 < d.cells.size(); i += 2) drop.push_back(pair_tile(d.cells[i], d.cells[i + 1]));
  for (std::size_t i = 0; i + 1 < d.cells.size(); i += 2) add.push_back(pair_tile(d.cells[i], d.cells[i + 1]));
  add.push_back(monomer(d.end().row, d.end().col));
  std::vector<Tile> tiles;
  for (const Tile& x : t.tiles())
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) tiles.push_back(x);
  tiles.insert(tiles.end(), add.begin(), add.end());
  if (t.is_rectangle()) return Tiling::from_tiles(t.rows(), t.cols(), std::move(tiles));
  return Tiling::from_tiles(t.rows(), t.cols(), std::move(tiles), t.mask());
}

}  // namespace detail

/// The diagonal running back from the far end; flipping it undoes `d`.
inline Diagonal reversed(const Diagonal& d) {
  Diagonal r;
  r.cells.assign(d.cells.rbegin(), d.cells.rend());
  r.monomer = r.cells.front();
  const bool n = !north(d.dir), e = !east(d.dir);
  r.dir = n ? (e ? RayDir::NE : RayDir::NW) : (e ? RayDir::SE : RayDir::SW);
  return r;
}

/// Diagonals of the monomer at `m` whose flip leaves a tatami tiling.
/// Interior monomers have none.
inline std::vector<Diagonal> find_diagonals(const Tiling& t, Cell m) {
  if (!t.in_region(m) || !t.is_monomer(m)) throw InvalidDiagonal("cell does not hold a monomer");
  const int R = t.rows(), C = t.cols();
  auto on_edge = [&](Cell x) { return x.row == 1 || x.row == R || x.col == 1 || x.col == C; };
  std::vector<Diagonal> out;
  if (!on_edge(m)) return out;
  const bool thin = R == 1 || C == 1;
  for (RayDir dir : {RayDir::NW, RayDir::NE, RayDir::SW, RayDir::SE}) {
    const Cell vstep{drow(dir), 0}, hstep{0, dcol(dir)};
    std::vector<std::pair<Cell, Cell>> orders;
    if (thin) {
      if (R == 1 && north(dir)) orders.push_back({hstep, hstep});
      if (C == 1 && east(dir)) orders.push_back({vstep, vstep});
    } else {
      orders = {{vstep, hstep}, {hstep, vstep}};
    }
    for (auto [a, b] : orders) {
      Diagonal d{m, dir, {m}};
      Cell cur = m;
      while (true) {
        const Cell c1{cur.row + a.row, cur.col + a.col};
        const Cell c2{c1.row + b.row, c1.col + b.col};
        if (!t.in_region(c1) || !t.in_region(c2) || !detail::has_tile(t, detail::pair_tile(c1, c2))) break;
        d.cells.push_back(c1);
        d.cells.push_back(c2);
        cur = c2;
        if (on_edge(cur)) break;
      }
      if (d.cells.size() < 3 || !on_edge(d.end())) continue;
      if (!tatami_valid(detail::apply_flip(t, d))) continue;
      out.push_back(std::move(d));
    }
  }
  return out;
}

/// Swaps the pairing along the diagonal: the monomer moves to the far end.
inline Tiling flip_diagonal(const Tiling& t, const Diagonal& d) {
  if (!detail::diagonal_present(t, d)) throw InvalidDiagonal("diagonal is not present in the tiling");
  Tiling out = detail::apply_flip(t, d);
  if (!tatami_valid(out)) throw InvalidDiagonal("flip breaks the tatami condition");
  return out;
}

namespace detail {

// Corner side of a boundary ray: (top?, left?), or nullopt for interior
// sources and rays that cross between opposite sides.
inline std::optional<std::pair<bool, bool>> ray_corner(const Feature& f, const Ray& ray, int rows, int cols) {
  if (f.side == Side::None || ray.tiles.empty()) return std::nullopt;
  const Tile past = next_ray_tile(ray.tiles.back(), ray.dir);
  bool out_top = false, out_bottom = false, out_left = false, out_right = false;
  for (int k = 0; k < past.size(); ++k) {
    Cell x = past.cells()[static_cast<std::size_t>(k)];
    out_top |= x.row < 1;
    out_bottom |= x.row > rows;
    out_left |= x.col < 1;
    out_right |= x.col > cols;
  }
  const bool from_row_side = f.side == Side::Top || f.side == Side::Bottom;
  if (from_row_side) {
    if (!out_left && !out_right) return std::nullopt;
    return std::make_pair(f.side == Side::Top, out_left);
  }
  if (!out_top && !out_bottom) return std::nullopt;
  return std::make_pair(out_top, f.side == Side::Left);
}

}  // namespace detail

/// Cells not lying between any boundary ray and the corner it belongs to.
inline int central_bond_area(const Tiling& t) {
  const int R = t.rows(), C = t.cols();
  const FeatureDiagram d = extract_features(t);
  std::vector<char> cut(static_cast<std::size_t>(R) * C, 0);
  RayTrace tr = trace_rays(d);
  for (const Ray& ray : tr.rays) {
    const auto corner = detail::ray_corner(d.features[static_cast<std::size_t>(ray.feature)], ray, R, C);
    if (!corner) continue;
    const RayCurve cv = ray_curve(ray);
    const auto [top, left] = *corner;
    const int y0 = top ? 1 : cv.row_min, y1 = top ? cv.row_max : R;
    for (int y = y0; y <= y1; ++y) {
      const int line = std::clamp(cv.line_in_row(std::clamp(y, cv.row_min, cv.row_max)), 0, C);
      for (int x = left ? 1 : line + 1; x <= (left ? line : C); ++x)
        cut[static_cast<std::size_t>(y - 1) * C + (x - 1)] = 1;
    }
  }
  return static_cast<int>(std::count(cut.begin(), cut.end(), 0));
}

/// No ray reaches past its own source. Only tiny grids have features like
/// that; elsewhere this is the same as an empty diagram.
inline bool is_trivial_tiling(const Tiling& t) {
  const FeatureDiagram d = extract_features(t);
  return std::all_of(d.features.begin(), d.features.end(),
                     [&](const Feature& f) { return degenerate_feature(f, d.rows, d.cols); });
}

struct Canonicalization {
  Tiling trivial;
  std::vector<Diagonal> flips;
};

/// A flip sequence from an n x n tiling with n monomers to a feature-free
/// tiling, moving each monomer at most once and growing the central bond
/// area at every step. Throws when the input is out of scope or no such
/// sequence exists.
inline Canonicalization canonicalize(const Tiling& t) {
  if (!t.is_rectangle() || t.rows() != t.cols() || t.monomers() != t.rows() || !tatami_valid(t))
    throw std::invalid_argument("canonicalize needs a tatami n x n tiling with n monomers");
  Canonicalization res{t, {}};
  std::set<Cell> moved;
  auto dfs = [&](auto& self, const Tiling& cur, int area) -> bool {
    if (is_trivial_tiling(cur)) {
      res.trivial = cur;
      return true;
    }
    std::vector<std::pair<int, std::pair<Diagonal, Tiling>>> options;
    for (Cell m : cur.monomer_cells()) {
      if (moved.count(m)) continue;
      for (Diagonal& dg : find_diagonals(cur, m)) {
        Tiling next = detail::apply_flip(cur, dg);
        const int a = central_bond_area(next);
        if (a > area) options.push_back({a, {std::move(dg), std::move(next)}});
      }
    }
    std::stable_sort(options.begin(), options.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (auto& [a, opt] : options) {
      auto& [dg, next] = opt;
      moved.insert(dg.end());
      res.flips.push_back(dg);
      if (self(self, next, a)) return true;
      res.flips.pop_back();
      moved.erase(dg.end());
    }
    return false;
  };
  if (!dfs(dfs, t, central_bond_area(t))) throw std::runtime_error("no monotone flip sequence reaches a trivial tiling");
  return res;
}

}  // namespace tatami
