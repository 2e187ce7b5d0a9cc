#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tatami/features.hpp"
#include "tatami/grid.hpp"

namespace tatami {

/// A herringbone chain of dimers from a source toward the boundary. tiles[0]
/// is the seed tile inside the source; each later tile is forced by the
/// previous two. Every direction has one chain shape:
///   NE: V(p,q) -> H(p-1,q-1),  H(p,q) -> V(p,q+2)
///   SE: V(p,q) -> H(p+2,q-1),  H(p,q) -> V(p-1,q+2)
///   NW: V(p,q) -> H(p-1,q),    H(p,q) -> V(p,q-1)
///   SW: V(p,q) -> H(p+2,q),    H(p,q) -> V(p-1,q-1)
struct Ray {
  int feature = 0;  // index into FeatureDiagram::features
  RayDir dir = RayDir::NE;
  std::vector<Tile> tiles;
};

inline Tile next_ray_tile(const Tile& t, RayDir d) {
  const int p = t.anchor.row, q = t.anchor.col;
  const bool v = t.kind == TileKind::VerticalDimer;
  switch (d) {
    case RayDir::NE: return v ? hdimer(p - 1, q - 1) : vdimer(p, q + 2);
    case RayDir::SE: return v ? hdimer(p + 2, q - 1) : vdimer(p - 1, q + 2);
    case RayDir::NW: return v ? hdimer(p - 1, q) : vdimer(p, q - 1);
    case RayDir::SW: return v ? hdimer(p + 2, q) : vdimer(p - 1, q - 1);
  }
  return t;
}

/// (direction, seed tile) for each ray a source emits.
inline std::vector<std::pair<RayDir, Tile>> ray_seeds(const Feature& f, int rows, int cols) {
  const int i = f.anchor.row, j = f.anchor.col;
  using D = RayDir;
  switch (f.kind) {
    case SourceKind::VortexCW:
      return {{D::NE, vdimer(i, j + 1)}, {D::SE, hdimer(i + 1, j - 1)}, {D::SW, vdimer(i - 1, j - 1)}, {D::NW, hdimer(i - 1, j)}};
    case SourceKind::VortexCCW:
      return {{D::NW, vdimer(i, j - 1)}, {D::SW, hdimer(i + 1, j)}, {D::SE, vdimer(i - 1, j + 1)}, {D::NE, hdimer(i - 1, j - 1)}};
    case SourceKind::BidimerH:
      return {{D::NW, hdimer(i, j)}, {D::SW, hdimer(i + 1, j)}, {D::NE, hdimer(i, j)}, {D::SE, hdimer(i + 1, j)}};
    case SourceKind::BidimerV:
      return {{D::NW, vdimer(i, j)}, {D::SW, vdimer(i, j)}, {D::NE, vdimer(i, j + 1)}, {D::SE, vdimer(i, j + 1)}};
    case SourceKind::Vee:
      switch (f.side) {
        case Side::Top: return {{D::SW, hdimer(i + 1, j)}, {D::SE, hdimer(i + 1, j)}};
        case Side::Bottom: return {{D::NW, hdimer(i - 1, j)}, {D::NE, hdimer(i - 1, j)}};
        case Side::Left: return {{D::NE, vdimer(i, j + 1)}, {D::SE, vdimer(i, j + 1)}};
        case Side::Right: return {{D::NW, vdimer(i, j - 1)}, {D::SW, vdimer(i, j - 1)}};
        default: return {};
      }
    case SourceKind::Loner:
      switch (f.side) {
        case Side::Top: return {{f.ray, hdimer(i + 1, east(f.ray) ? j - 1 : j)}};
        case Side::Bottom: return {{f.ray, hdimer(i - 1, east(f.ray) ? j - 1 : j)}};
        case Side::Left: return {{f.ray, vdimer(north(f.ray) ? i : i - 1, j + 1)}};
        case Side::Right: return {{f.ray, vdimer(north(f.ray) ? i : i - 1, j - 1)}};
        default: return {};
      }
  }
  (void)rows;
  (void)cols;
  return {};
}

inline bool tile_fits(const Tile& t, int rows, int cols) {
  for (int k = 0; k < t.size(); ++k) {
    Cell c = t.cells()[static_cast<std::size_t>(k)];
    if (c.row < 1 || c.row > rows || c.col < 1 || c.col > cols) return false;
  }
  return true;
}

/// True when every tile of the source lies inside the grid, and the feature
/// sits where its kind allows (vees and loners on their side).
inline bool feature_in_bounds(const Feature& f, int rows, int cols) {
  if (rows < 2 || cols < 2) return false;
  switch (f.kind) {
    case SourceKind::Vee:
    case SourceKind::Loner:
      if ((f.side == Side::Top && f.anchor.row != 1) || (f.side == Side::Bottom && f.anchor.row != rows) ||
          (f.side == Side::Left && f.anchor.col != 1) || (f.side == Side::Right && f.anchor.col != cols) ||
          f.side == Side::None)
        return false;
      if (f.kind == SourceKind::Loner) {
        const bool vertical_side = f.side == Side::Left || f.side == Side::Right;
        const bool inward = vertical_side ? (f.side == Side::Left ? east(f.ray) : !east(f.ray))
                                          : (f.side == Side::Top ? !north(f.ray) : north(f.ray));
        if (!inward) return false;
      }
      break;
    default:
      if (f.side != Side::None) return false;
  }
  for (const Tile& t : source_tiles(f))
    if (!tile_fits(t, rows, cols)) return false;
  return true;
}

/// Ray tiles for one feature, seed first, stopping before the first tile
/// that leaves the grid.
inline std::vector<Ray> feature_rays(const Feature& f, int feature_index, int rows, int cols) {
  std::vector<Ray> out;
  for (const auto& [dir, seed] : ray_seeds(f, rows, cols)) {
    Ray ray{feature_index, dir, {}};
    for (Tile t = seed; tile_fits(t, rows, cols); t = next_ray_tile(t, dir)) ray.tiles.push_back(t);
    out.push_back(std::move(ray));
  }
  return out;
}

/// True when every tile of the ray belongs to its own source, as happens
/// for sources squeezed against two sides in very thin grids.
inline bool confined_to_source(const Feature& f, const Ray& ray) {
  const auto src = source_tiles(f);
  return std::all_of(ray.tiles.begin(), ray.tiles.end(),
                     [&](const Tile& t) { return std::find(src.begin(), src.end(), t) != src.end(); });
}

/// A feature whose rays all stay inside its source.
inline bool degenerate_feature(const Feature& f, int rows, int cols) {
  const auto rays = feature_rays(f, 0, rows, cols);
  return std::all_of(rays.begin(), rays.end(), [&](const Ray& r) { return confined_to_source(f, r); });
}

struct RayCollision {
  int first_feature = 0;
  int second_feature = 0;
  Cell cell;
};

struct RayTrace {
  std::vector<Ray> rays;
  std::vector<RayCollision> collisions;  // distinct tiles claiming one cell

  bool ok() const { return collisions.empty(); }
};

/// Traces every ray of every feature and reports cells claimed by two
/// different tiles (features overlapping or rays intersecting).
inline RayTrace trace_rays(const FeatureDiagram& d) {
  RayTrace res;
  const int R = d.rows, C = d.cols;
  std::vector<std::optional<std::pair<Tile, int>>> claim(static_cast<std::size_t>(std::max(R * C, 0)));
  auto stake = [&](const Tile& t, int feature) {
    for (int k = 0; k < t.size(); ++k) {
      Cell c = t.cells()[static_cast<std::size_t>(k)];
      auto& slot = claim[static_cast<std::size_t>(c.row - 1) * C + (c.col - 1)];
      if (!slot) {
        slot = std::make_pair(t, feature);
      } else if (slot->first != t) {
        res.collisions.push_back({slot->second, feature, c});
      }
    }
  };
  for (std::size_t i = 0; i < d.features.size(); ++i) {
    const Feature& f = d.features[i];
    if (!feature_in_bounds(f, R, C)) {
      res.collisions.push_back({static_cast<int>(i), static_cast<int>(i), f.anchor});
      continue;
    }
    for (const Tile& t : source_tiles(f)) stake(t, static_cast<int>(i));
    for (auto& ray : feature_rays(f, static_cast<int>(i), R, C)) {
      for (const Tile& t : ray.tiles) stake(t, static_cast<int>(i));
      res.rays.push_back(std::move(ray));
    }
  }
  return res;
}

/// Source and ray tiles of a diagram, deduplicated; empty optional when two
/// tiles claim one cell.
inline std::optional<std::vector<Tile>> forced_tiles(const FeatureDiagram& d) {
  RayTrace tr = trace_rays(d);
  if (!tr.ok()) return std::nullopt;
  std::vector<Tile> tiles;
  for (const auto& f : d.features)
    for (const Tile& t : source_tiles(f)) tiles.push_back(t);
  for (const auto& r : tr.rays)
    for (const Tile& t : r.tiles) tiles.push_back(t);
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
  return tiles;
}

}  // namespace tatami
