#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tatami/enumerator.hpp"
#include "tatami/grid.hpp"
#include "tatami/search.hpp"

namespace tatami {

/// A finite set of unit cells inside its bounding box. The tatami rule only
/// applies at vertices whose four cells are all in the region.
struct CellRegion {
  int rows = 0;
  int cols = 0;
  std::vector<char> mask;  // row-major, 1 = in region

  static CellRegion rectangle(int rows, int cols) {
    return {rows, cols, std::vector<char>(static_cast<std::size_t>(rows) * cols, 1)};
  }

  static CellRegion from_cells(const std::vector<Cell>& cells) {
    CellRegion r;
    for (Cell c : cells) {
      if (c.row < 1 || c.col < 1) throw StructuralError("region cells use 1-based coordinates");
      r.rows = std::max(r.rows, c.row);
      r.cols = std::max(r.cols, c.col);
    }
    r.mask.assign(static_cast<std::size_t>(r.rows) * r.cols, 0);
    for (Cell c : cells) r.mask[static_cast<std::size_t>(c.row - 1) * r.cols + (c.col - 1)] = 1;
    return r;
  }

  bool contains(Cell c) const {
    return c.row >= 1 && c.row <= rows && c.col >= 1 && c.col <= cols &&
           mask[static_cast<std::size_t>(c.row - 1) * cols + (c.col - 1)];
  }
  int size() const { return static_cast<int>(std::count(mask.begin(), mask.end(), 1)); }
  bool full() const { return std::all_of(mask.begin(), mask.end(), [](char v) { return v == 1; }); }
};

/// Lines of '#' (in region) and '.' (outside); short lines are padded with '.'.
inline CellRegion parse_region(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  CellRegion r;
  r.rows = static_cast<int>(lines.size());
  for (const auto& l : lines) r.cols = std::max(r.cols, static_cast<int>(l.size()));
  r.mask.assign(static_cast<std::size_t>(r.rows) * r.cols, 0);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < static_cast<int>(lines[static_cast<std::size_t>(i)].size()); ++j) {
      const char ch = lines[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (ch == '#') r.mask[static_cast<std::size_t>(i) * r.cols + j] = 1;
      else if (ch != '.') throw ParseError(std::string("unexpected character '") + ch + "' in region", i + 1, j + 1);
    }
  return r;
}

inline std::string encode_region(const CellRegion& r) {
  std::string out;
  for (int i = 0; i < r.rows; ++i) {
    for (int j = 0; j < r.cols; ++j) out += r.mask[static_cast<std::size_t>(i) * r.cols + j] ? '#' : '.';
    out += '\n';
  }
  return out;
}

/// Calls fn(const TilingSearch&) on every tatami tiling of the region; fn
/// returns false to stop.
template <class Fn>
void for_each_region_tiling(const CellRegion& region, Fn&& fn, int cell_budget = kDefaultCellBudget) {
  if (region.size() > cell_budget)
    throw BudgetExceeded("region has " + std::to_string(region.size()) + " cells, budget is " + std::to_string(cell_budget));
  TilingSearch s(region.rows, region.cols, region.mask);
  s.run([&] { return fn(static_cast<const TilingSearch&>(s)); });
}

inline std::vector<Tiling> enumerate_region(const CellRegion& region, int cell_budget = kDefaultCellBudget) {
  std::vector<Tiling> out;
  for_each_region_tiling(
      region,
      [&](const TilingSearch& s) {
        out.push_back(s.to_tiling());
        return true;
      },
      cell_budget);
  return out;
}

struct MinMonomerResult {
  int m_star = 0;
  Tiling witness;
  BigInt nodes_explored = 0;
};

/// Fewest monomers over all tatami tilings of a nonempty region, by
/// branch-and-bound: a branch dies once its monomers plus the parity of the
/// cells still free cannot beat the incumbent. Among optimal tilings the
/// witness has the fewest monomers on the region's edge.
inline MinMonomerResult min_monomers(const CellRegion& region, int cell_budget = kDefaultCellBudget) {
  const int n = region.size();
  if (n == 0) throw StructuralError("min_monomers needs a nonempty region");
  if (n > cell_budget) throw BudgetExceeded("region has " + std::to_string(n) + " cells, budget is " + std::to_string(cell_budget));
  auto on_edge = [&](const Cell& c) {
    return !region.contains({c.row - 1, c.col}) || !region.contains({c.row + 1, c.col}) ||
           !region.contains({c.row, c.col - 1}) || !region.contains({c.row, c.col + 1});
  };
  const int floor = n % 2;
  TilingSearch s(region.rows, region.cols, region.mask);
  std::pair<int, int> best{std::numeric_limits<int>::max(), 0};
  std::optional<Tiling> witness;
  std::uint64_t nodes = 0;
  auto edge_monomers = [&] {
    int k = 0;
    for (const Tile& t : s.placed()) k += t.kind == TileKind::Monomer && on_edge(t.anchor);
    return k;
  };
  s.run([](const Tile&) { return true; },
        [&] {
          ++nodes;
          return std::make_pair(s.monomers() + s.free_cells() % 2, edge_monomers()) < best;
        },
        [&] {
          const std::pair<int, int> here{s.monomers(), edge_monomers()};
          if (here < best) {
            best = here;
            witness = s.to_tiling();
          }
          return best > std::make_pair(floor, 0);
        });
  if (!witness) throw StructuralError("region admits no tiling");
  return {best.first, std::move(*witness), BigInt(nodes)};
}

}  // namespace tatami
