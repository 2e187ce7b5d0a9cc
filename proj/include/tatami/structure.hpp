#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tatami/boundary.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/features.hpp"
#include "tatami/rays.hpp"
#include "tatami/search.hpp"

namespace tatami {

/// Every feature whose source fits inside an r x c grid.
inline std::vector<Feature> candidate_features(int rows, int cols) {
  std::vector<Feature> out;
  if (rows < 2 || cols < 2) return out;
  auto add = [&](const Feature& f) {
    if (feature_in_bounds(f, rows, cols)) out.push_back(f);
  };
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) {
      add({SourceKind::VortexCW, {i, j}});
      add({SourceKind::VortexCCW, {i, j}});
      add({SourceKind::BidimerH, {i, j}});
      add({SourceKind::BidimerV, {i, j}});
      for (Side s : {Side::Top, Side::Right, Side::Bottom, Side::Left}) {
        add({SourceKind::Vee, {i, j}, s});
        for (RayDir r : {RayDir::NW, RayDir::NE, RayDir::SW, RayDir::SE}) add({SourceKind::Loner, {i, j}, s, r});
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Candidate features grouped by the row-major index of the anchor of their
// last tile, which is when a row-major search completes them.
struct FeatureIndex {
  struct Entry {
    Feature feature;
    std::vector<Tile> tiles;
  };
  std::vector<std::vector<Entry>> by_last_anchor;
};

inline const FeatureIndex& feature_index(int rows, int cols) {
  static std::map<std::pair<int, int>, std::unique_ptr<FeatureIndex>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[{rows, cols}];
  if (!slot) {
    slot = std::make_unique<FeatureIndex>();
    slot->by_last_anchor.resize(static_cast<std::size_t>(rows) * cols);
    for (const Feature& f : candidate_features(rows, cols)) {
      auto tiles = source_tiles(f);
      const Tile last = *std::max_element(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) { return a.anchor < b.anchor; });
      slot->by_last_anchor[static_cast<std::size_t>(last.anchor.row - 1) * cols + (last.anchor.col - 1)].push_back({f, std::move(tiles)});
    }
  }
  return *slot;
}

}  // namespace detail

/// Streams every tiling whose feature diagram equals d: sources and rays are
/// pinned, the remaining cells are searched, and any placement completing a
/// source outside d is vetoed. fn(const TilingSearch&) returns false to stop.
template <class Fn>
void for_each_render(const FeatureDiagram& d, Fn&& fn, int cell_budget = kDefaultCellBudget) {
  detail::check_budget(d.rows, d.cols, cell_budget);
  if (d.rows == 0 || d.cols == 0) {
    if (d.trivial()) {
      TilingSearch s(d.rows, d.cols);
      fn(s);
    }
    return;
  }
  if (!d.trivial() && (d.rows < 2 || d.cols < 2)) return;
  auto pinned = forced_tiles(d);
  if (!pinned) return;
  if (!is_partial_valid(d.rows, d.cols, *pinned)) return;
  const int C = d.cols;
  std::vector<const Tile*> expected(static_cast<std::size_t>(d.rows) * C, nullptr);
  for (const Tile& t : *pinned)
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      expected[static_cast<std::size_t>(x.row - 1) * C + (x.col - 1)] = &t;
    }
  const detail::FeatureIndex* index = d.rows >= 2 && d.cols >= 2 ? &detail::feature_index(d.rows, d.cols) : nullptr;
  TilingSearch s(d.rows, d.cols);
  auto accept = [&](const Tile& t) {
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      const Tile* e = expected[static_cast<std::size_t>(x.row - 1) * C + (x.col - 1)];
      if (e && *e != t) return false;
    }
    if (!index) return true;
    for (const auto& entry : index->by_last_anchor[static_cast<std::size_t>(t.anchor.row - 1) * C + (t.anchor.col - 1)]) {
      bool complete = true;
      for (const Tile& x : entry.tiles) {
        const Tile* have = s.tile_at(x.anchor.row, x.anchor.col);
        if (!have || *have != x) {
          complete = false;
          break;
        }
      }
      if (complete && !std::binary_search(d.features.begin(), d.features.end(), entry.feature)) return false;
    }
    return true;
  };
  s.run(accept, [] { return true; }, [&] { return fn(std::as_const(s)); });
}

/// All tilings whose feature diagram is d, in search order.
inline std::vector<Tiling> render(const FeatureDiagram& d, int cell_budget = kDefaultCellBudget) {
  std::vector<Tiling> out;
  for_each_render(
      d,
      [&](const TilingSearch& s) {
        out.push_back(s.to_tiling());
        return true;
      },
      cell_budget);
  return out;
}

/// Staircase curve of a ray. In row y the curve is the vertical grid line
/// right of column line_in_row(y); in column x it is the horizontal grid line
/// below row line_in_col(x). The dimers on the H side of the curve and the V
/// side never mix within a row or column.
struct RayCurve {
  RayDir dir = RayDir::NE;
  int k = 0;
  int row_min = 0, row_max = 0, col_min = 0, col_max = 0;

  // NE and SW lean one way, NW and SE the other
  bool rising() const { return dir == RayDir::NE || dir == RayDir::SW; }
  int line_in_row(int y) const { return rising() ? k - y : k + y; }
  int line_in_col(int x) const { return rising() ? k - x : x - k - 1; }
};

inline RayCurve ray_curve(const Ray& ray) {
  RayCurve c{ray.dir, 0, 0, 0, 0, 0};
  const Tile& s = ray.tiles.front();
  const int p = s.anchor.row, q = s.anchor.col;
  const bool v = s.kind == TileKind::VerticalDimer;
  switch (ray.dir) {
    case RayDir::NE: c.k = v ? p + q - 1 : p + q + 1; break;
    case RayDir::SW: c.k = v ? p + q + 1 : p + q - 1; break;
    case RayDir::SE: c.k = v ? q - p - 2 : q - p + 1; break;
    case RayDir::NW: c.k = v ? q - p : q - p - 1; break;
  }
  c.row_min = c.col_min = 1 << 30;
  c.row_max = c.col_max = -(1 << 30);
  for (const Tile& t : ray.tiles)
    for (int i = 0; i < t.size(); ++i) {
      Cell x = t.cells()[static_cast<std::size_t>(i)];
      c.row_min = std::min(c.row_min, x.row);
      c.row_max = std::max(c.row_max, x.row);
      c.col_min = std::min(c.col_min, x.col);
      c.col_max = std::max(c.col_max, x.col);
    }
  return c;
}

enum class ViolationKind : std::uint8_t {
  OutOfBounds,             // a source does not fit, or sits off its side
  Duplicate,               // the same feature listed twice
  Intersection,            // two tiles of the traced structure claim one cell
  CornerMeeting,           // the traced structure already has four corners at a point
  HorizontalOrientation,   // row-adjacent rays both heading east or both west
  HorizontalParity,        // row-adjacent rays at the wrong distance parity
  VerticalOrientation,     // column-adjacent rays both heading north or both south
  VerticalParity,          // column-adjacent rays at the wrong distance parity
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::OutOfBounds: return "out-of-bounds";
    case ViolationKind::Duplicate: return "duplicate";
    case ViolationKind::Intersection: return "intersection";
    case ViolationKind::CornerMeeting: return "corner-meeting";
    case ViolationKind::HorizontalOrientation: return "horizontal-orientation";
    case ViolationKind::HorizontalParity: return "horizontal-parity";
    case ViolationKind::VerticalOrientation: return "vertical-orientation";
    case ViolationKind::VerticalParity: return "vertical-parity";
  }
  return "?";
}

struct Violation {
  ViolationKind kind = ViolationKind::OutOfBounds;
  int first_feature = 0;
  int second_feature = 0;
  RayDir first_dir = RayDir::NW;
  RayDir second_dir = RayDir::NW;
  int line = 0;       // row (horizontal checks) or column (vertical checks)
  int distance = 0;   // parity checks only

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Validation {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

class ParityInvarianceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// Features whose traced tiles overlap are glued into one group; their
// relative placement is fixed locally and no condition applies inside a group.
inline std::vector<int> glue_groups(const FeatureDiagram& d, const std::vector<Ray>& rays) {
  std::vector<int> group(d.features.size());
  for (std::size_t i = 0; i < group.size(); ++i) group[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (group[static_cast<std::size_t>(x)] != x) x = group[static_cast<std::size_t>(x)];
    return x;
  };
  std::map<Tile, int> first_owner;
  auto visit = [&](const Tile& t, int f) {
    auto [it, fresh] = first_owner.try_emplace(t, f);
    if (!fresh) group[static_cast<std::size_t>(find(it->second))] = find(f);
  };
  for (std::size_t f = 0; f < d.features.size(); ++f)
    for (const Tile& t : source_tiles(d.features[f])) visit(t, static_cast<int>(f));
  for (const Ray& r : rays)
    for (const Tile& t : r.tiles) visit(t, r.feature);
  for (auto& g : group) g = find(g);
  return group;
}

// Adjacent ray pairs along each row (horizontal) or column (vertical). A
// curve counts on a line when it lies on the grid there and touches a tile of
// its own feature. Consecutive curves of different groups are adjacent unless
// a tile of some other feature lies between them. The parity of a pair's distance
// must agree on every line where the pair is adjacent.
inline void check_adjacencies(const FeatureDiagram& d, const std::vector<Ray>& rays, bool horizontal,
                              std::vector<Violation>& out) {
  const int R = d.rows, C = d.cols;
  const std::vector<int> group = glue_groups(d, rays);
  // owner: some feature with a forced tile on the cell; mine: cells of a
  // feature's tiles; near: cells a ray's curve may touch to count on a line
  // (its own tiles, and for a loner the source tiles off its ray)
  const std::size_t N = static_cast<std::size_t>(R) * C;
  std::vector<int> owner(N, -1);
  std::vector<std::vector<char>> mine(d.features.size(), std::vector<char>(N, 0));
  std::vector<std::vector<char>> near(rays.size(), std::vector<char>(N, 0));
  auto mark = [&](const Tile& t, std::vector<char>& m) {
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      m[static_cast<std::size_t>(x.row - 1) * C + (x.col - 1)] = 1;
    }
  };
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::size_t f = static_cast<std::size_t>(rays[i].feature);
    for (const Tile& t : rays[i].tiles) {
      mark(t, mine[f]);
      mark(t, near[i]);
    }
  }
  for (std::size_t f = 0; f < d.features.size(); ++f)
    for (const Tile& t : source_tiles(d.features[f])) {
      bool on_ray = false;
      for (const Ray& r : rays)
        if (static_cast<std::size_t>(r.feature) == f && std::find(r.tiles.begin(), r.tiles.end(), t) != r.tiles.end()) on_ray = true;
      mark(t, mine[f]);
      if (!on_ray && d.features[f].kind == SourceKind::Loner)
        for (std::size_t i = 0; i < rays.size(); ++i)
          if (static_cast<std::size_t>(rays[i].feature) == f) mark(t, near[i]);
    }
  for (std::size_t f = 0; f < d.features.size(); ++f)
    for (std::size_t c = 0; c < N; ++c)
      if (mine[f][c] && owner[c] < 0) owner[c] = static_cast<int>(f);
  auto cell_at = [&](int line, int x) {
    return horizontal ? static_cast<std::size_t>(line - 1) * C + (x - 1) : static_cast<std::size_t>(x - 1) * C + (line - 1);
  };
  std::vector<RayCurve> curves;
  std::vector<char> stub;  // rays that never leave their source: barriers only
  for (const Ray& r : rays) {
    curves.push_back(ray_curve(r));
    const auto own = source_tiles(d.features[static_cast<std::size_t>(r.feature)]);
    stub.push_back(std::all_of(r.tiles.begin(), r.tiles.end(),
                               [&](const Tile& t) { return std::find(own.begin(), own.end(), t) != own.end(); }));
  }
  const int lines = horizontal ? R : C;
  const int span = horizontal ? C : R;
  std::map<std::pair<std::size_t, std::size_t>, int> parity_seen;
  std::vector<std::pair<int, std::size_t>> at;
  for (int y = 1; y <= lines; ++y) {
    at.clear();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const int pos = horizontal ? curves[i].line_in_row(y) : curves[i].line_in_col(y);
      if (pos < 0 || pos > span) continue;
      const auto& m = near[i];
      if ((pos >= 1 && m[cell_at(y, pos)]) || (pos + 1 <= span && m[cell_at(y, pos + 1)])) at.emplace_back(pos, i);
    }
    std::sort(at.begin(), at.end());
    for (std::size_t n = 0; n + 1 < at.size(); ++n) {
      const auto [pa, a] = at[n];
      const auto [pb, b] = at[n + 1];
      if (stub[a] || stub[b]) continue;
      const int ga = group[static_cast<std::size_t>(rays[a].feature)];
      const int gb = group[static_cast<std::size_t>(rays[b].feature)];
      if (ga == gb) continue;
      bool clear = true;
      const auto& ma = mine[static_cast<std::size_t>(rays[a].feature)];
      const auto& mb = mine[static_cast<std::size_t>(rays[b].feature)];
      for (int x = pa + 1; x <= pb && clear; ++x) {
        const std::size_t c = cell_at(y, x);
        clear = owner[c] < 0 || ma[c] || mb[c];
      }
      if (!clear) continue;
      const RayDir da = rays[a].dir, db = rays[b].dir;
      const int dist = pb - pa;
      auto [it, fresh] = parity_seen.try_emplace({a, b}, dist & 1);
      if (!fresh) {
        if (it->second != (dist & 1)) throw ParityInvarianceError("distance parity changes along an adjacent ray pair");
        continue;
      }
      Violation v{ViolationKind::HorizontalOrientation, rays[a].feature, rays[b].feature, da, db, y, dist};
      bool odd_expected;
      if (horizontal) {
        if (east(da) == east(db)) {
          out.push_back(v);
          continue;
        }
        odd_expected = (da == RayDir::NE && db == RayDir::NW) || (da == RayDir::SE && db == RayDir::SW);
        v.kind = ViolationKind::HorizontalParity;
      } else {
        v.kind = ViolationKind::VerticalOrientation;
        if (north(da) == north(db)) {
          out.push_back(v);
          continue;
        }
        odd_expected = (da == RayDir::SW && db == RayDir::NW) || (da == RayDir::SE && db == RayDir::NE);
        v.kind = ViolationKind::VerticalParity;
      }
      if (((dist & 1) != 0) != odd_expected) out.push_back(v);
    }
  }
}

}  // namespace detail

/// Checks a diagram: every source in bounds, traced rays disjoint and free
/// of four-corner points, and the orientation and parity conditions on every
/// pair of rays joined by a row or column segment that crosses no other ray.
/// Distance is the number of columns (rows) strictly between the two curves.
inline Validation validate_diagram(const FeatureDiagram& diagram) {
  Validation res;
  FeatureDiagram d = diagram;
  d.normalize();
  for (std::size_t i = 0; i < d.features.size(); ++i) {
    if (!feature_in_bounds(d.features[i], d.rows, d.cols))
      res.violations.push_back({ViolationKind::OutOfBounds, static_cast<int>(i), static_cast<int>(i)});
    if (i > 0 && d.features[i] == d.features[i - 1])
      res.violations.push_back({ViolationKind::Duplicate, static_cast<int>(i - 1), static_cast<int>(i)});
  }
  if (!res.valid()) return res;
  RayTrace tr = trace_rays(d);
  for (const auto& c : tr.collisions)
    res.violations.push_back({ViolationKind::Intersection, c.first_feature, c.second_feature, RayDir::NW, RayDir::NW, c.cell.row});
  if (!res.valid()) return res;
  if (!is_partial_valid(d.rows, d.cols, *forced_tiles(d)))
    res.violations.push_back({ViolationKind::CornerMeeting, 0, 0});
  detail::check_adjacencies(d, tr.rays, true, res.violations);
  detail::check_adjacencies(d, tr.rays, false, res.violations);
  return res;
}

class NotRealizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The tiling with the given boundary ring. Searches with every boundary
/// cell pinned to its labelled tile and stops at the second hit.
inline Tiling reconstruct_from_boundary(const BoundaryLabels& b, int cell_budget = kDefaultCellBudget) {
  detail::check_budget(b.rows, b.cols, cell_budget);
  if (b.rows == 0 || b.cols == 0) return Tiling::from_tiles(b.rows, b.cols, {});
  const auto ring = boundary_ring(b.rows, b.cols);
  if (b.labels.size() != ring.size()) throw NotRealizable("boundary ring has the wrong length");
  std::vector<const Tile*> expected(static_cast<std::size_t>(b.rows) * b.cols, nullptr);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Tile& t = b.labels[i];
    if (!tile_fits(t, b.rows, b.cols)) throw NotRealizable("boundary label leaves the grid");
    bool covers = false;
    for (int k = 0; k < t.size(); ++k) covers |= t.cells()[static_cast<std::size_t>(k)] == ring[i];
    if (!covers) throw NotRealizable("boundary label does not cover its cell");
    expected[static_cast<std::size_t>(ring[i].row - 1) * b.cols + (ring[i].col - 1)] = &t;
  }
  auto accept = [&](const Tile& t) {
    for (int k = 0; k < t.size(); ++k) {
      Cell x = t.cells()[static_cast<std::size_t>(k)];
      const Tile* e = expected[static_cast<std::size_t>(x.row - 1) * b.cols + (x.col - 1)];
      if (e && *e != t) return false;
    }
    return true;
  };
  if (b.rows <= 2 || b.cols <= 2) {
    // every cell is on the ring: the labels are the tiling
    std::vector<Tile> tiles(b.labels.begin(), b.labels.end());
    std::sort(tiles.begin(), tiles.end());
    tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
    for (const Tile& t : tiles)
      if (!accept(t)) throw NotRealizable("boundary labels disagree");
    try {
      if (!is_partial_valid(b.rows, b.cols, tiles)) throw NotRealizable("no tatami tiling has this boundary");
    } catch (const StructuralError&) {
      throw NotRealizable("boundary labels overlap");
    }
    return Tiling::from_tiles(b.rows, b.cols, std::move(tiles));
  }
  TilingSearch s(b.rows, b.cols);
  std::vector<Tiling> found;
  s.run(accept, [] { return true; },
        [&] {
          found.push_back(s.to_tiling());
          return found.size() < 2;
        });
  if (found.empty()) throw NotRealizable("no tatami tiling has this boundary");
  if (found.size() > 1) throw InvariantFailure("two tatami tilings share one boundary");
  return std::move(found.front());
}

}  // namespace tatami
