#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "tatami/grid.hpp"

namespace tatami {

/// Boundary cells of an r x c rectangle, clockwise from (1,1), each listed once.
inline std::vector<Cell> boundary_ring(int rows, int cols) {
  std::vector<Cell> ring;
  if (rows <= 0 || cols <= 0) return ring;
  for (int c = 1; c <= cols; ++c) ring.push_back({1, c});
  for (int r = 2; r <= rows; ++r) ring.push_back({r, cols});
  if (rows > 1)
    for (int c = cols - 1; c >= 1; --c) ring.push_back({rows, c});
  if (cols > 1)
    for (int r = rows - 1; r >= 2; --r) ring.push_back({r, 1});
  return ring;
}

inline bool on_boundary(int rows, int cols, Cell c) {
  return c.row == 1 || c.row == rows || c.col == 1 || c.col == cols;
}

/// For each boundary cell (in boundary_ring order), the tile covering it.
struct BoundaryLabels {
  int rows = 0;
  int cols = 0;
  std::vector<Tile> labels;

  friend bool operator==(const BoundaryLabels&, const BoundaryLabels&) = default;
};

inline BoundaryLabels boundary_of(const Tiling& t) {
  BoundaryLabels b{t.rows(), t.cols(), {}};
  for (Cell c : boundary_ring(t.rows(), t.cols())) b.labels.push_back(t.tile_at(c));
  return b;
}

/// "r c" on the first line, then one ring entry per line: "M" or "D@(row,col,H|V)".
inline std::string encode_boundary(const BoundaryLabels& b) {
  std::ostringstream out;
  out << b.rows << ' ' << b.cols << '\n';
  for (const Tile& t : b.labels) {
    if (t.kind == TileKind::Monomer)
      out << "M\n";
    else
      out << "D@(" << t.anchor.row << ',' << t.anchor.col << ',' << to_string(t.kind) << ")\n";
  }
  return out.str();
}

inline BoundaryLabels decode_boundary(const std::string& text) {
  std::istringstream in(text);
  BoundaryLabels b;
  if (!(in >> b.rows >> b.cols) || b.rows < 0 || b.cols < 0) throw ParseError("expected grid dimensions", 1, 1);
  const auto ring = boundary_ring(b.rows, b.cols);
  std::string tok;
  int line = 1;
  while (in >> tok) {
    ++line;
    if (b.labels.size() >= ring.size()) throw ParseError("too many ring entries", line, 1);
    const Cell here = ring[b.labels.size()];
    if (tok == "M") {
      b.labels.push_back(monomer(here.row, here.col));
      continue;
    }
    int r = 0, c = 0;
    char k = 0;
    if (std::sscanf(tok.c_str(), "D@(%d,%d,%c)", &r, &c, &k) != 3 || (k != 'H' && k != 'V'))
      throw ParseError("bad ring entry '" + tok + "'", line, 1);
    Tile t{k == 'H' ? TileKind::HorizontalDimer : TileKind::VerticalDimer, {r, c}};
    if (t.anchor != here && t.second() != here) throw ParseError("tile does not cover its ring cell", line, 1);
    b.labels.push_back(t);
  }
  if (b.labels.size() != ring.size()) throw ParseError("ring has wrong length", line, 1);
  return b;
}

}  // namespace tatami
