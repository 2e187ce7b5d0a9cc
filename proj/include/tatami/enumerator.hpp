#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tatami/boundary.hpp"
#include "tatami/grid.hpp"
#include "tatami/search.hpp"

namespace tatami {

/// Monomer count -> number of tilings. Zero entries are omitted.
using CountTable = std::map<int, BigInt>;

inline BigInt total(const CountTable& t) {
  BigInt s = 0;
  for (const auto& [m, n] : t) s += n;
  return s;
}

struct EnumerateOptions {
  int cell_budget = kDefaultCellBudget;
  bool canonical_order = false;
};

namespace detail {

inline void check_budget(int rows, int cols, int budget) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative grid dimensions");
  if (static_cast<long>(rows) * cols > budget)
    throw BudgetExceeded("grid " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds the cell budget of " +
                         std::to_string(budget));
}

}  // namespace detail

/// Calls fn(search) for every tatami tiling of rows x cols; fn sees the live
/// search state and returns false to stop early.
template <class Fn>
void for_each_tiling(int rows, int cols, Fn&& fn, int cell_budget = kDefaultCellBudget) {
  detail::check_budget(rows, cols, cell_budget);
  if (rows == 0 || cols == 0) {
    TilingSearch empty(rows, cols);
    fn(empty);
    return;
  }
  TilingSearch s(rows, cols);
  s.run([&] { return fn(static_cast<const TilingSearch&>(s)); });
}

/// All tatami tilings of rows x cols, each exactly once, in search order
/// (or sorted by text encoding when canonical_order is set).
inline std::vector<Tiling> enumerate_tilings(int rows, int cols, const EnumerateOptions& opt = {}) {
  std::vector<Tiling> out;
  for_each_tiling(
      rows, cols,
      [&](const TilingSearch& s) {
        out.push_back(s.to_tiling());
        return true;
      },
      opt.cell_budget);
  if (opt.canonical_order)
    std::sort(out.begin(), out.end(), [](const Tiling& a, const Tiling& b) { return encode_text(a) < encode_text(b); });
  return out;
}

inline CountTable count_by_monomers(int rows, int cols, int cell_budget = kDefaultCellBudget) {
  detail::check_budget(rows, cols, cell_budget);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(rows) * cols + 1, 0);
  for_each_tiling(
      rows, cols,
      [&](const TilingSearch& s) {
        ++counts[static_cast<std::size_t>(s.monomers())];
        return true;
      },
      cell_budget);
  CountTable table;
  for (std::size_t m = 0; m < counts.size(); ++m)
    if (counts[m]) table[static_cast<int>(m)] = counts[m];
  return table;
}

/// (monomers, vertical dimers) -> count.
inline std::map<std::pair<int, int>, BigInt> count_by_monomers_and_vdimers(int rows, int cols,
                                                                           int cell_budget = kDefaultCellBudget) {
  std::map<std::pair<int, int>, std::uint64_t> raw;
  for_each_tiling(
      rows, cols,
      [&](const TilingSearch& s) {
        ++raw[{s.monomers(), s.vertical_dimers()}];
        return true;
      },
      cell_budget);
  std::map<std::pair<int, int>, BigInt> out;
  for (const auto& [k, v] : raw) out[k] = v;
  return out;
}

/// Tilings whose boundary cells are covered exactly by the labelled tiles.
inline std::vector<Tiling> enumerate_with_boundary(const BoundaryLabels& b, int cell_budget = kDefaultCellBudget) {
  detail::check_budget(b.rows, b.cols, cell_budget);
  std::vector<Tiling> out;
  if (b.rows == 0 || b.cols == 0) {
    out.push_back(Tiling::from_tiles(b.rows, b.cols, {}));
    return out;
  }
  const auto ring = boundary_ring(b.rows, b.cols);
  if (b.labels.size() != ring.size()) return out;
  // expected[cell] = label tile for boundary cells
  std::vector<const Tile*> expected(static_cast<std::size_t>(b.rows) * b.cols, nullptr);
  for (std::size_t i = 0; i < ring.size(); ++i)
    expected[static_cast<std::size_t>(ring[i].row - 1) * b.cols + (ring[i].col - 1)] = &b.labels[i];
  auto accept = [&](const Tile& t) {
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      const Tile* e = expected[static_cast<std::size_t>(x.row - 1) * b.cols + (x.col - 1)];
      if (e && *e != t) return false;
    }
    return true;
  };
  TilingSearch s(b.rows, b.cols);
  s.run(accept, [] { return true; },
        [&] {
          out.push_back(s.to_tiling());
          return true;
        });
  return out;
}

}  // namespace tatami
