#pragma once

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <vector>

#include "tatami/grid.hpp"

namespace tatami {

enum class RayDir : std::uint8_t { NW, NE, SW, SE };
enum class SourceKind : std::uint8_t { Loner, Vee, BidimerH, BidimerV, VortexCW, VortexCCW };
enum class Side : std::uint8_t { None, Top, Right, Bottom, Left };

inline const char* to_string(RayDir d) {
  switch (d) {
    case RayDir::NW: return "NW";
    case RayDir::NE: return "NE";
    case RayDir::SW: return "SW";
    case RayDir::SE: return "SE";
  }
  return "?";
}

inline const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::Loner: return "LONER";
    case SourceKind::Vee: return "VEE";
    case SourceKind::BidimerH: return "BIDIMER_H";
    case SourceKind::BidimerV: return "BIDIMER_V";
    case SourceKind::VortexCW: return "VORTEX_CW";
    case SourceKind::VortexCCW: return "VORTEX_CCW";
  }
  return "?";
}

inline const char* to_string(Side s) {
  switch (s) {
    case Side::None: return "none";
    case Side::Top: return "top";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Left: return "left";
  }
  return "?";
}

inline bool north(RayDir d) { return d == RayDir::NW || d == RayDir::NE; }
inline bool east(RayDir d) { return d == RayDir::NE || d == RayDir::SE; }
inline int drow(RayDir d) { return north(d) ? -1 : 1; }
inline int dcol(RayDir d) { return east(d) ? 1 : -1; }

/// A ray source. Anchors:
///   vortex   - its monomer
///   bidimer  - anchor of the upper (H) or left (V) of the two dimers
///   vee      - the left (top/bottom side) or upper (left/right side) monomer
///   loner    - its monomer; `ray` names the direction of its single ray
struct Feature {
  SourceKind kind = SourceKind::Loner;
  Cell anchor;
  Side side = Side::None;
  RayDir ray = RayDir::NW;  // loners only

  friend auto operator<=>(const Feature&, const Feature&) = default;
};

struct FeatureDiagram {
  int rows = 0;
  int cols = 0;
  std::vector<Feature> features;  // sorted

  bool trivial() const { return features.empty(); }
  void normalize() { std::sort(features.begin(), features.end()); }

  friend bool operator==(const FeatureDiagram&, const FeatureDiagram&) = default;
  friend auto operator<=>(const FeatureDiagram& a, const FeatureDiagram& b) {
    if (auto c = a.rows <=> b.rows; c != 0) return c;
    if (auto c = a.cols <=> b.cols; c != 0) return c;
    return a.features <=> b.features;
  }
};

/// The tiles that make up a source (its colored tiles, plus the dimers a
/// boundary source forces directly next to it).
inline std::vector<Tile> source_tiles(const Feature& f) {
  const int i = f.anchor.row, j = f.anchor.col;
  switch (f.kind) {
    case SourceKind::VortexCW:
      return {monomer(i, j), hdimer(i - 1, j), vdimer(i, j + 1), hdimer(i + 1, j - 1), vdimer(i - 1, j - 1)};
    case SourceKind::VortexCCW:
      return {monomer(i, j), hdimer(i - 1, j - 1), vdimer(i, j - 1), hdimer(i + 1, j), vdimer(i - 1, j + 1)};
    case SourceKind::BidimerH: return {hdimer(i, j), hdimer(i + 1, j)};
    case SourceKind::BidimerV: return {vdimer(i, j), vdimer(i, j + 1)};
    case SourceKind::Vee:
      switch (f.side) {
        case Side::Top: return {monomer(i, j), monomer(i, j + 1), hdimer(i + 1, j)};
        case Side::Bottom: return {monomer(i, j), monomer(i, j + 1), hdimer(i - 1, j)};
        case Side::Left: return {monomer(i, j), monomer(i + 1, j), vdimer(i, j + 1)};
        case Side::Right: return {monomer(i, j), monomer(i + 1, j), vdimer(i, j - 1)};
        default: return {};
      }
    case SourceKind::Loner: {
      // the aligned dimer sits on the side opposite the ray
      const bool ray_east = east(f.ray), ray_south = !north(f.ray);
      switch (f.side) {
        case Side::Top:
        case Side::Bottom: {
          const int in = f.side == Side::Top ? i + 1 : i - 1;
          if (ray_east) return {monomer(i, j), hdimer(i, j - 2), hdimer(in, j - 1), vdimer(std::min(i, in), j + 1)};
          return {monomer(i, j), hdimer(i, j + 1), hdimer(in, j), vdimer(std::min(i, in), j - 1)};
        }
        case Side::Left:
        case Side::Right: {
          const int in = f.side == Side::Left ? j + 1 : j - 1;
          if (ray_south) return {monomer(i, j), vdimer(i - 2, j), vdimer(i - 1, in), hdimer(i + 1, std::min(j, in))};
          return {monomer(i, j), vdimer(i + 1, j), vdimer(i, in), hdimer(i - 1, std::min(j, in))};
        }
        default: return {};
      }
    }
  }
  return {};
}

namespace detail {

inline bool has_tile(const Tiling& t, const Tile& want) {
  for (int k = 0; k < want.size(); ++k)
    if (!t.in_region(want.cells()[static_cast<std::size_t>(k)])) return false;
  return t.tile_at(want.anchor) == want;
}

inline bool has_all(const Tiling& t, const std::vector<Tile>& tiles) {
  return std::all_of(tiles.begin(), tiles.end(), [&](const Tile& x) { return has_tile(t, x); });
}

}  // namespace detail

/// Every source present in a tatami tiling of a rectangle, found by matching
/// the source patterns. Pure running bond yields the empty diagram.
inline FeatureDiagram extract_features(const Tiling& t) {
  FeatureDiagram d{t.rows(), t.cols(), {}};
  const int r = t.rows(), c = t.cols();
  if (r < 2 || c < 2) return d;
  auto try_add = [&](const Feature& f) {
    if (detail::has_all(t, source_tiles(f))) d.features.push_back(f);
  };
  for (const Tile& tile : t.tiles()) {
    const int i = tile.anchor.row, j = tile.anchor.col;
    switch (tile.kind) {
      case TileKind::Monomer:
        try_add({SourceKind::VortexCW, {i, j}});
        try_add({SourceKind::VortexCCW, {i, j}});
        if (i == 1 && j < c) try_add({SourceKind::Vee, {i, j}, Side::Top});
        if (i == r && j < c) try_add({SourceKind::Vee, {i, j}, Side::Bottom});
        if (j == 1 && i < r) try_add({SourceKind::Vee, {i, j}, Side::Left});
        if (j == c && i < r) try_add({SourceKind::Vee, {i, j}, Side::Right});
        if (i == 1) {
          try_add({SourceKind::Loner, {i, j}, Side::Top, RayDir::SE});
          try_add({SourceKind::Loner, {i, j}, Side::Top, RayDir::SW});
        }
        if (i == r) {
          try_add({SourceKind::Loner, {i, j}, Side::Bottom, RayDir::NE});
          try_add({SourceKind::Loner, {i, j}, Side::Bottom, RayDir::NW});
        }
        if (j == 1) {
          try_add({SourceKind::Loner, {i, j}, Side::Left, RayDir::NE});
          try_add({SourceKind::Loner, {i, j}, Side::Left, RayDir::SE});
        }
        if (j == c) {
          try_add({SourceKind::Loner, {i, j}, Side::Right, RayDir::NW});
          try_add({SourceKind::Loner, {i, j}, Side::Right, RayDir::SW});
        }
        break;
      case TileKind::HorizontalDimer: try_add({SourceKind::BidimerH, {i, j}}); break;
      case TileKind::VerticalDimer: try_add({SourceKind::BidimerV, {i, j}}); break;
    }
  }
  d.normalize();
  return d;
}

/// One feature per line: "KIND row col [side [ray]]".
inline std::string encode_diagram(const FeatureDiagram& d) {
  std::ostringstream out;
  out << d.rows << ' ' << d.cols << '\n';
  for (const auto& f : d.features) {
    out << to_string(f.kind) << ' ' << f.anchor.row << ' ' << f.anchor.col;
    if (f.kind == SourceKind::Vee || f.kind == SourceKind::Loner) out << ' ' << to_string(f.side);
    if (f.kind == SourceKind::Loner) out << ' ' << to_string(f.ray);
    out << '\n';
  }
  return out.str();
}

inline FeatureDiagram decode_diagram(const std::string& text) {
  std::istringstream in(text);
  FeatureDiagram d;
  std::string line;
  int lineno = 0;
  bool have_dims = false;
  auto parse_enum = [&](const std::string& s, auto first, auto last, int col) {
    using E = decltype(first);
    for (int v = static_cast<int>(first); v <= static_cast<int>(last); ++v)
      if (s == to_string(static_cast<E>(v))) return static_cast<E>(v);
    throw ParseError("unknown token '" + s + "'", lineno, col);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (!have_dims) {
      std::istringstream dims(line);
      if (!(dims >> d.rows >> d.cols)) throw ParseError("expected grid dimensions", lineno, 1);
      have_dims = true;
      continue;
    }
    Feature f;
    f.kind = parse_enum(kind, SourceKind::Loner, SourceKind::VortexCCW, 1);
    if (!(ls >> f.anchor.row >> f.anchor.col)) throw ParseError("expected row and column", lineno, 2);
    if (f.kind == SourceKind::Vee || f.kind == SourceKind::Loner) {
      std::string side;
      if (!(ls >> side)) throw ParseError("expected side", lineno, 3);
      f.side = parse_enum(side, Side::None, Side::Left, 3);
    }
    if (f.kind == SourceKind::Loner) {
      std::string ray;
      if (!(ls >> ray)) throw ParseError("expected ray direction", lineno, 4);
      f.ray = parse_enum(ray, RayDir::NW, RayDir::SE, 4);
    }
    d.features.push_back(f);
  }
  if (!have_dims) throw ParseError("empty diagram file", 1, 1);
  d.normalize();
  return d;
}

}  // namespace tatami
