#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatami/grid.hpp"

namespace tatami {

/// Refusal when a request exceeds the configured engine budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultCellBudget = 42;

/// Mutable backtracking state over a rectangle or a cell mask. Cells are
/// filled in row-major order; at the first free cell the search tries a
/// monomer, then a horizontal dimer, then a vertical dimer.
class TilingSearch {
 public:
  TilingSearch(int rows, int cols, std::vector<char> mask = {})
      : rows_(rows), cols_(cols), owner_(static_cast<std::size_t>(rows) * cols, kFree) {
    if (!mask.empty()) {
      for (std::size_t i = 0; i < owner_.size(); ++i)
        if (!mask[i]) owner_[i] = kOutside;
      mask_ = std::move(mask);
    }
    for (int v : owner_) free_cells_ += v == kFree;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Tile>& placed() const { return placed_; }
  int monomers() const { return monomers_; }
  int vertical_dimers() const { return vdimers_; }
  int free_cells() const { return free_cells_; }

  /// Placed tile covering (r,c), or nullptr.
  const Tile* tile_at(int r, int c) const {
    if (r < 1 || r > rows_ || c < 1 || c > cols_) return nullptr;
    int v = owner_[static_cast<std::size_t>(r - 1) * cols_ + (c - 1)];
    return v < 0 ? nullptr : &placed_[static_cast<std::size_t>(v)];
  }

  Tiling to_tiling() const {
    if (mask_.empty()) return Tiling::from_tiles(rows_, cols_, placed_);
    return Tiling::from_tiles(rows_, cols_, placed_, mask_);
  }

  /// Depth-first search. `accept(tile)` may veto a placement (called after
  /// the tatami check passes); `bound()` returning false prunes the current
  /// node; `leaf()` returning false stops the whole search.
  template <class Accept, class Bound, class Leaf>
  void run(Accept&& accept, Bound&& bound, Leaf&& leaf) {
    stopped_ = false;
    dfs(0, accept, bound, leaf);
  }

  template <class Leaf>
  void run(Leaf&& leaf) {
    run([](const Tile&) { return true; }, [] { return true; }, leaf);
  }

 private:
  static constexpr int kFree = -1;
  static constexpr int kOutside = -2;

  int& at(int r, int c) { return owner_[static_cast<std::size_t>(r - 1) * cols_ + (c - 1)]; }

  // Tile id at (r,c); -1 for free, outside, or off-grid.
  int owner(int r, int c) const {
    if (r < 1 || r > rows_ || c < 1 || c > cols_) return -1;
    int v = owner_[static_cast<std::size_t>(r - 1) * cols_ + (c - 1)];
    return v < 0 ? -1 : v;
  }

  bool locally_valid(const Tile& t) const {
    auto own = [this](int r, int c) { return owner(r, c); };
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      for (int dr = -1; dr <= 0; ++dr)
        for (int dc = -1; dc <= 0; ++dc)
          if (detail::vertex_has_four_corners(x.row + dr, x.col + dc, own)) return false;
    }
    return true;
  }

  bool fits(Cell x) const {
    return x.row >= 1 && x.row <= rows_ && x.col >= 1 && x.col <= cols_ &&
           owner_[static_cast<std::size_t>(x.row - 1) * cols_ + (x.col - 1)] == kFree;
  }

  void place(const Tile& t, int id) {
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      at(x.row, x.col) = id;
    }
    placed_.push_back(t);
    free_cells_ -= t.size();
    monomers_ += t.kind == TileKind::Monomer;
    vdimers_ += t.kind == TileKind::VerticalDimer;
  }

  void unplace() {
    const Tile t = placed_.back();
    placed_.pop_back();
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      at(x.row, x.col) = kFree;
    }
    free_cells_ += t.size();
    monomers_ -= t.kind == TileKind::Monomer;
    vdimers_ -= t.kind == TileKind::VerticalDimer;
  }

  template <class Accept, class Bound, class Leaf>
  void dfs(std::size_t from, Accept& accept, Bound& bound, Leaf& leaf) {
    std::size_t i = from;
    while (i < owner_.size() && owner_[i] != kFree) ++i;
    if (i == owner_.size()) {
      if (!leaf()) stopped_ = true;
      return;
    }
    if (!bound()) return;
    const Cell x{static_cast<int>(i) / cols_ + 1, static_cast<int>(i) % cols_ + 1};
    const int id = static_cast<int>(placed_.size());
    const Tile options[3] = {monomer(x.row, x.col), hdimer(x.row, x.col), vdimer(x.row, x.col)};
    for (const Tile& t : options) {
      if (t.size() == 2 && !fits(t.second())) continue;
      place(t, id);
      if (locally_valid(t) && accept(t)) dfs(i + 1, accept, bound, leaf);
      unplace();
      if (stopped_) return;
    }
  }

  int rows_;
  int cols_;
  std::vector<char> mask_;
  std::vector<int> owner_;
  std::vector<Tile> placed_;
  int free_cells_ = 0;
  int monomers_ = 0;
  int vdimers_ = 0;
  bool stopped_ = false;
};

}  // namespace tatami
