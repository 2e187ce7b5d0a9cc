#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tatami {

using BigInt = boost::multiprecision::cpp_int;

/// Grid cell, 1-based, rows top-down and columns left-right.
struct Cell {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class TileKind : std::uint8_t { Monomer, HorizontalDimer, VerticalDimer };

inline const char* to_string(TileKind k) {
  switch (k) {
    case TileKind::Monomer: return "M";
    case TileKind::HorizontalDimer: return "H";
    case TileKind::VerticalDimer: return "V";
  }
  return "?";
}

/// A tile anchored at its top-left cell.
struct Tile {
  TileKind kind = TileKind::Monomer;
  Cell anchor;

  int size() const { return kind == TileKind::Monomer ? 1 : 2; }

  Cell second() const {
    return kind == TileKind::HorizontalDimer ? Cell{anchor.row, anchor.col + 1}
                                             : Cell{anchor.row + 1, anchor.col};
  }

  std::array<Cell, 2> cells() const { return {anchor, size() == 2 ? second() : anchor}; }

  friend auto operator<=>(const Tile&, const Tile&) = default;
};

inline Tile monomer(int r, int c) { return {TileKind::Monomer, {r, c}}; }
inline Tile hdimer(int r, int c) { return {TileKind::HorizontalDimer, {r, c}}; }
inline Tile vdimer(int r, int c) { return {TileKind::VerticalDimer, {r, c}}; }

/// Overlap, gap, or out-of-bounds tile. Distinct from a tatami violation.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A complete cover of a rectangle, or of a cell mask inside a bounding box.
/// Immutable once built; tiles are kept sorted by anchor.
class Tiling {
 public:
  Tiling() = default;

  /// Builds a rectangle tiling. Throws StructuralError on overlap, gap or out-of-bounds tiles.
  static Tiling from_tiles(int rows, int cols, std::vector<Tile> tiles) {
    return build(rows, cols, std::move(tiles), {});
  }

  /// Builds a tiling of the cells where mask[(row-1)*cols + col-1] is nonzero.
  static Tiling from_tiles(int rows, int cols, std::vector<Tile> tiles, std::vector<char> mask) {
    if (mask.size() != static_cast<std::size_t>(rows) * cols)
      throw StructuralError("mask size does not match grid");
    return build(rows, cols, std::move(tiles), std::move(mask));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return tiles_.empty(); }
  bool is_rectangle() const { return mask_.empty(); }
  const std::vector<Tile>& tiles() const { return tiles_; }
  const std::vector<char>& mask() const { return mask_; }

  bool in_bounds(Cell c) const { return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_; }

  bool in_region(Cell c) const {
    return in_bounds(c) && (mask_.empty() || mask_[index(c)] != 0);
  }

  /// Index into tiles() of the tile covering c, or -1 outside the region.
  int tile_index(Cell c) const { return in_bounds(c) ? cell_map_[index(c)] : -1; }

  const Tile& tile_at(Cell c) const { return tiles_.at(static_cast<std::size_t>(tile_index(c))); }

  std::optional<TileKind> kind_at(Cell c) const {
    int t = tile_index(c);
    if (t < 0) return std::nullopt;
    return tiles_[static_cast<std::size_t>(t)].kind;
  }

  bool is_monomer(Cell c) const { return kind_at(c) == TileKind::Monomer; }

  int count(TileKind k) const {
    return static_cast<int>(std::count_if(tiles_.begin(), tiles_.end(), [k](const Tile& t) { return t.kind == k; }));
  }
  int monomers() const { return count(TileKind::Monomer); }
  int vertical_dimers() const { return count(TileKind::VerticalDimer); }
  int horizontal_dimers() const { return count(TileKind::HorizontalDimer); }

  std::vector<Cell> monomer_cells() const {
    std::vector<Cell> out;
    for (const auto& t : tiles_)
      if (t.kind == TileKind::Monomer) out.push_back(t.anchor);
    return out;
  }

  int cell_count() const {
    if (mask_.empty()) return rows_ * cols_;
    return static_cast<int>(std::count(mask_.begin(), mask_.end(), 1));
  }

  friend bool operator==(const Tiling& a, const Tiling& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.mask_ == b.mask_ && a.tiles_ == b.tiles_;
  }
  friend bool operator<(const Tiling& a, const Tiling& b) {
    return std::tie(a.rows_, a.cols_, a.mask_, a.cell_map_) < std::tie(b.rows_, b.cols_, b.mask_, b.cell_map_);
  }

 private:
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row - 1) * cols_ + (c.col - 1); }

  static Tiling build(int rows, int cols, std::vector<Tile> tiles, std::vector<char> mask) {
    if (rows < 0 || cols < 0) throw StructuralError("negative grid dimensions");
    Tiling t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.mask_ = std::move(mask);
    std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) { return a.anchor < b.anchor; });
    t.tiles_ = std::move(tiles);
    t.cell_map_.assign(static_cast<std::size_t>(rows) * cols, -1);
    for (std::size_t i = 0; i < t.tiles_.size(); ++i) {
      const Tile& tile = t.tiles_[i];
      for (int k = 0; k < tile.size(); ++k) {
        Cell c = tile.cells()[static_cast<std::size_t>(k)];
        if (!t.in_region(c)) throw StructuralError("tile outside region");
        auto& slot = t.cell_map_[t.index(c)];
        if (slot != -1) throw StructuralError("overlapping tiles");
        slot = static_cast<int>(i);
      }
    }
    for (int r = 1; r <= rows; ++r)
      for (int c = 1; c <= cols; ++c)
        if (t.in_region({r, c}) && t.cell_map_[t.index({r, c})] == -1)
          throw StructuralError("uncovered cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
    return t;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<char> mask_;
  std::vector<Tile> tiles_;
  std::vector<int> cell_map_;
};

namespace detail {

// Four corners meet at the vertex below-right of (r,c) iff all four cells are
// covered by four distinct tiles. Cells outside the region return -1.
template <class CellOwner>
bool vertex_has_four_corners(int r, int c, CellOwner&& owner) {
  int a = owner(r, c), b = owner(r, c + 1), d = owner(r + 1, c), e = owner(r + 1, c + 1);
  if (a < 0 || b < 0 || d < 0 || e < 0) return false;
  return a != b && a != d && a != e && b != d && b != e && d != e;
}

}  // namespace detail

/// True iff no interior vertex of the region has four tile corners.
inline bool tatami_valid(const Tiling& t) {
  auto owner = [&](int r, int c) { return t.tile_index({r, c}); };
  for (int r = 1; r < t.rows(); ++r)
    for (int c = 1; c < t.cols(); ++c)
      if (detail::vertex_has_four_corners(r, c, owner)) return false;
  return true;
}

/// Lists the vertices (named by their top-left cell) where four corners meet.
inline std::vector<Cell> tatami_violations(const Tiling& t) {
  std::vector<Cell> out;
  auto owner = [&](int r, int c) { return t.tile_index({r, c}); };
  for (int r = 1; r < t.rows(); ++r)
    for (int c = 1; c < t.cols(); ++c)
      if (detail::vertex_has_four_corners(r, c, owner)) out.push_back({r, c});
  return out;
}

/// Pruning predicate over a partial cover. Throws StructuralError on overlap or out-of-bounds.
inline bool is_partial_valid(int rows, int cols, std::span<const Tile> tiles) {
  std::vector<int> owner_map(static_cast<std::size_t>(rows) * cols, -1);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    for (int k = 0; k < tiles[i].size(); ++k) {
      Cell c = tiles[i].cells()[static_cast<std::size_t>(k)];
      if (c.row < 1 || c.row > rows || c.col < 1 || c.col > cols) throw StructuralError("tile out of bounds");
      auto& slot = owner_map[static_cast<std::size_t>(c.row - 1) * cols + (c.col - 1)];
      if (slot != -1) throw StructuralError("overlapping tiles");
      slot = static_cast<int>(i);
    }
  }
  auto owner = [&](int r, int c) {
    if (r < 1 || r > rows || c < 1 || c > cols) return -1;
    return owner_map[static_cast<std::size_t>(r - 1) * cols + (c - 1)];
  };
  for (int r = 1; r < rows; ++r)
    for (int c = 1; c < cols; ++c)
      if (detail::vertex_has_four_corners(r, c, owner)) return false;
  return true;
}

enum class Transform { Rotate90, Rotate180, Transpose, FlipH, FlipV };

/// Rotate90 is clockwise. FlipH mirrors left-right, FlipV top-bottom.
inline Tiling transform(const Tiling& t, Transform op) {
  const int r = t.rows(), c = t.cols();
  const bool swaps = op == Transform::Rotate90 || op == Transform::Transpose;
  const int nr = swaps ? c : r, nc = swaps ? r : c;
  auto map = [&](Cell x) -> Cell {
    switch (op) {
      case Transform::Rotate90: return {x.col, r + 1 - x.row};
      case Transform::Rotate180: return {r + 1 - x.row, c + 1 - x.col};
      case Transform::Transpose: return {x.col, x.row};
      case Transform::FlipH: return {x.row, c + 1 - x.col};
      case Transform::FlipV: return {r + 1 - x.row, x.col};
    }
    return x;
  };
  std::vector<Tile> tiles;
  tiles.reserve(t.tiles().size());
  for (const auto& tile : t.tiles()) {
    Cell a = map(tile.anchor);
    if (tile.kind == TileKind::Monomer) {
      tiles.push_back({TileKind::Monomer, a});
      continue;
    }
    Cell b = map(tile.second());
    TileKind k = tile.kind;
    if (swaps) k = k == TileKind::HorizontalDimer ? TileKind::VerticalDimer : TileKind::HorizontalDimer;
    tiles.push_back({k, std::min(a, b)});
  }
  if (t.is_rectangle()) return Tiling::from_tiles(nr, nc, std::move(tiles));
  std::vector<char> mask(static_cast<std::size_t>(nr) * nc, 0);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= c; ++j)
      if (t.in_region({i, j})) {
        Cell m = map({i, j});
        mask[static_cast<std::size_t>(m.row - 1) * nc + (m.col - 1)] = 1;
      }
  return Tiling::from_tiles(nr, nc, std::move(tiles), std::move(mask));
}

/// All eight symmetries of the square, identity first.
inline std::vector<Tiling> dihedral_images(const Tiling& t) {
  std::vector<Tiling> out;
  Tiling cur = t;
  for (int i = 0; i < 4; ++i) {
    out.push_back(cur);
    out.push_back(transform(cur, Transform::Transpose));
    cur = transform(cur, Transform::Rotate90);
  }
  return out;
}

/// One line per row: M, L/R (horizontal dimer halves), T/B (vertical dimer halves).
/// Cells outside a region mask print as '.'.
inline std::string encode_text(const Tiling& t) {
  std::string out;
  out.reserve(static_cast<std::size_t>(t.rows()) * (t.cols() + 1));
  for (int r = 1; r <= t.rows(); ++r) {
    for (int c = 1; c <= t.cols(); ++c) {
      int idx = t.tile_index({r, c});
      if (idx < 0) {
        out.push_back('.');
        continue;
      }
      const Tile& tile = t.tiles()[static_cast<std::size_t>(idx)];
      bool first = tile.anchor == Cell{r, c};
      switch (tile.kind) {
        case TileKind::Monomer: out.push_back('M'); break;
        case TileKind::HorizontalDimer: out.push_back(first ? 'L' : 'R'); break;
        case TileKind::VerticalDimer: out.push_back(first ? 'T' : 'B'); break;
      }
    }
    out.push_back('\n');
  }
  return out;
}

/// Inverse of encode_text. With allow_holes, '.' marks a cell outside the region.
inline Tiling decode_text(std::string_view text, bool allow_holes = false) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  const int rows = static_cast<int>(lines.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(lines.front().size());
  std::vector<char> mask;
  bool holes = false;
  std::vector<Tile> tiles;
  auto at = [&](int r, int c) -> char {
    if (r < 1 || r > rows || c < 1 || c > cols) return '\0';
    return lines[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)];
  };
  for (int r = 1; r <= rows; ++r) {
    if (static_cast<int>(lines[static_cast<std::size_t>(r - 1)].size()) != cols)
      throw ParseError("ragged line", r, std::min<int>(cols, static_cast<int>(lines[static_cast<std::size_t>(r - 1)].size())) + 1);
    for (int c = 1; c <= cols; ++c) {
      switch (at(r, c)) {
        case 'M': tiles.push_back(monomer(r, c)); break;
        case 'L':
          if (at(r, c + 1) != 'R') throw ParseError("'L' not followed by 'R'", r, c);
          tiles.push_back(hdimer(r, c));
          break;
        case 'R':
          if (at(r, c - 1) != 'L') throw ParseError("'R' not preceded by 'L'", r, c);
          break;
        case 'T':
          if (at(r + 1, c) != 'B') throw ParseError("'T' without 'B' below", r, c);
          tiles.push_back(vdimer(r, c));
          break;
        case 'B':
          if (at(r - 1, c) != 'T') throw ParseError("'B' without 'T' above", r, c);
          break;
        case '.':
          if (!allow_holes) throw ParseError("unexpected character '.'", r, c);
          holes = true;
          break;
        default: throw ParseError(std::string("unexpected character '") + at(r, c) + "'", r, c);
      }
    }
  }
  if (!holes) return Tiling::from_tiles(rows, cols, std::move(tiles));
  mask.assign(static_cast<std::size_t>(rows) * cols, 0);
  for (int r = 1; r <= rows; ++r)
    for (int c = 1; c <= cols; ++c)
      if (at(r, c) != '.') mask[static_cast<std::size_t>(r - 1) * cols + (c - 1)] = 1;
  return Tiling::from_tiles(rows, cols, std::move(tiles), std::move(mask));
}

}  // namespace tatami
