#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "quadtree.hpp"
#include "stars.hpp"
#include "string_spanner.hpp"

namespace hopspan {

struct HittingStats {
  std::size_t violations = 0;  // qualifying object needed an off-lattice point
  std::size_t degenerate = 0;  // object below the side threshold needed a point
};

struct HittingSet {
  std::vector<Point> points;
  double min_side = 0;
};

namespace detail {

inline double pow2_floor(double x) { return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(x)))); }

inline Point interior_point(const GeometricObject& u) {
  switch (u.shape()) {
    case Shape::ball: return u.center();
    case Shape::box: {
      Point p(u.lo().size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = u.lo()[i] + 0.5 * (u.hi()[i] - u.lo()[i]);
      return p;
    }
    case Shape::union_set: return interior_point(u.members().front());
    case Shape::polyline: return u.vertices().front();
    case Shape::line: return {u.line_x(), 0.0};
  }
  return {};
}

// Nearest point of the closed cell boundary to p.
inline Point nearest_on_boundary(const Point& p, const AxisBox& box) {
  Point q(p.size());
  bool inside = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[i] = std::clamp(p[i], box.lo[i], box.hi[i]);
    if (q[i] != p[i]) inside = false;
  }
  if (!inside) return q;
  std::size_t axis = 0;
  double best = std::numeric_limits<double>::infinity();
  bool to_hi = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] - box.lo[i] < best) {
      best = p[i] - box.lo[i];
      axis = i;
      to_hi = false;
    }
    if (box.hi[i] - p[i] < best) {
      best = box.hi[i] - p[i];
      axis = i;
      to_hi = true;
    }
  }
  q = p;
  q[axis] = to_hi ? box.hi[axis] : box.lo[axis];
  return q;
}

// A point of u near the boundary of the cell, snapped to a power-of-two
// lattice so nearby objects share points.
inline Point anchor_point(const GeometricObject& u, const QuadtreeCell& cell, double min_side) {
  const AxisBox cb = cell.box();
  const int d = u.dimension();
  switch (u.shape()) {
    case Shape::ball: {
      const Point& c = u.center();
      const double rho = u.radius();
      const Point q = nearest_on_boundary(c, cb);
      double dist = 0;
      for (int i = 0; i < d; ++i) dist += sq(q[i] - c[i]);
      dist = std::sqrt(dist);
      const double s = std::min(rho, min_side / 2);
      const double step = dist > 0 ? std::min(dist, rho - s) / dist : 0.0;
      Point m(c);
      for (int i = 0; i < d; ++i) m[i] += (q[i] - c[i]) * step;
      const double h = pow2_floor(min_side / (4 * std::sqrt(static_cast<double>(d))));
      Point snapped(m);
      for (int i = 0; i < d; ++i) snapped[i] = std::round(m[i] / h) * h;
      return contains_point(u, snapped) ? snapped : m;
    }
    case Shape::box: {
      Point t(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const double lo = std::max(u.lo()[i], cb.lo[i]), hi = std::min(u.hi()[i], cb.hi[i]);
        t[i] = lo <= hi ? lo + 0.5 * (hi - lo) : u.lo()[i] + 0.5 * (u.hi()[i] - u.lo()[i]);
      }
      for (int i = 0; i < d; ++i) {
        if (u.lo()[i] < cb.lo[i] && cb.lo[i] <= u.hi()[i]) {
          t[i] = cb.lo[i];
          break;
        }
        if (u.hi()[i] >= cb.hi[i] && cb.hi[i] >= u.lo()[i]) {
          t[i] = cb.hi[i];
          break;
        }
      }
      const double h = pow2_floor(min_side / 4);
      for (int i = 0; i < d; ++i) {
        const double lo = u.lo()[i], hi = u.hi()[i];
        for (double cand : {std::round(t[i] / h) * h, std::floor(t[i] / h) * h, std::ceil(t[i] / h) * h}) {
          if (lo <= cand && cand <= hi) {
            t[i] = cand;
            break;
          }
        }
      }
      return t;
    }
    case Shape::union_set: {
      const GeometricObject* best = nullptr;
      for (const auto& m : u.members())
        if (!outside_cell(m, cell) && (!best || side_length(m) > side_length(*best))) best = &m;
      return anchor_point(best ? *best : u.members().front(), cell, min_side);
    }
    default: return interior_point(u);
  }
}

}  // namespace detail

// Points hitting every candidate object (candidates are objects meeting the
// cell boundary). Greedy in decreasing side length.
inline HittingSet boundary_hitting_set(const QuadtreeCell& cell, std::span<const GeometricObject> objects,
                                       std::span<const std::size_t> candidates, int d_star,
                                       HittingStats* stats = nullptr) {
  HittingSet hs;
  hs.min_side = cell.side() / (2.0 * d_star);
  std::vector<std::size_t> order(candidates.begin(), candidates.end());
  std::vector<double> side(objects.size(), 0);
  for (std::size_t i : order) side[i] = side_length(objects[i]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return side[a] != side[b] ? side[a] > side[b] : a < b;
  });
  for (std::size_t i : order) {
    const auto& u = objects[i];
    bool hit = false;
    for (const auto& p : hs.points)
      if (contains_point(u, p)) {
        hit = true;
        break;
      }
    if (hit) continue;
    Point p = detail::anchor_point(u, cell, hs.min_side);
    if (!contains_point(u, p)) {
      p = detail::interior_point(u);
      if (stats) ++stats->violations;
    } else if (side[i] < hs.min_side && stats) {
      ++stats->degenerate;
    }
    hs.points.push_back(std::move(p));
  }
  return hs;
}

inline std::vector<std::size_t> boundary_objects(const QuadtreeCell& cell, std::span<const GeometricObject> objects) {
  std::vector<std::size_t> out;
  const AxisBox cb = cell.box();
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].bounds().overlaps(cb) && meets_cell_boundary(objects[i], cell)) out.push_back(i);
  return out;
}

// Objects u such that the shifted u + tau^(j) is (2 d_star)-aligned.
inline std::vector<std::vector<std::size_t>> shift_groups(std::span<const GeometricObject> objects, int d_star) {
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(d_star));
  for (int j = 0; j < d_star; ++j)
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (aligned_in_quadtree(shift_object(objects[i], j, d_star), 2.0 * d_star))
        groups[static_cast<std::size_t>(j)].push_back(i);
  return groups;
}

struct FatOptions {
  std::uint64_t jitter_seed = 1;
  std::size_t base_case = kBaseCaseSize;
};

struct FatStats {
  HittingStats hitting;
  std::size_t uncovered_pairs = 0;  // graph edges not inside a common shift group
  std::size_t dropped_edges = 0;    // candidate edges rejected by the graph check
  std::size_t fallbacks = 0;        // recursion steps that made no progress
};

namespace detail {

struct FatContext {
  int d_star;
  FatOptions opt;
  FatStats stats;
};

struct FatLevel {
  std::span<const GeometricObject> objs;
  const IntersectionGraph& g;
  EdgeSink& sink;
  FatContext& ctx;

  void edge(Vertex a, Vertex b) {
    if (a == b) return;
    if (g.has_edge(a, b)) sink.add(a, b);
    else ++ctx.stats.dropped_edges;
  }
};

inline void fat_3hop(std::span<const GeometricObject> objs, const IntersectionGraph& g, EdgeSink& sink, FatContext& ctx);
inline void fat_tk(std::span<const GeometricObject> objs, const IntersectionGraph& g, int k, EdgeSink& sink,
                   FatContext& ctx);

template <typename F>
void recurse_on(std::span<const GeometricObject> objs, const IntersectionGraph& g, EdgeSink& sink,
                const std::vector<Vertex>& subset, F&& f) {
  if (subset.size() < 2) return;
  auto sub = induced(g, subset);
  std::vector<GeometricObject> sub_objs;
  sub_objs.reserve(subset.size());
  for (Vertex v : sub.to_parent) sub_objs.push_back(objs[v]);
  EdgeSink child(&sink, sub.to_parent);
  f(std::span<const GeometricObject>(sub_objs), sub.graph, child);
}

// Objects containing each point, ascending.
inline std::vector<std::vector<Vertex>> hit_lists(std::span<const GeometricObject> objs, const std::vector<Point>& pts) {
  std::vector<std::vector<Vertex>> out(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (Vertex i = 0; i < objs.size(); ++i)
      if (objs[i].bounds().contains(pts[p]) && contains_point(objs[i], pts[p])) out[p].push_back(i);
  return out;
}

inline void fat_3hop(std::span<const GeometricObject> objs, const IntersectionGraph& g, EdgeSink& sink,
                     FatContext& ctx) {
  const std::size_t n = objs.size();
  if (n <= ctx.opt.base_case) {
    add_all_edges(g, sink);
    return;
  }
  FatLevel lv{objs, g, sink, ctx};
  const auto pts = jittered_leftmost_points(objs, ctx.opt.jitter_seed);
  const QuadtreeCell gamma = quadtree_centroid(pts);
  std::vector<Vertex> inside, outside;
  std::vector<std::size_t> crossing;
  for (Vertex i = 0; i < n; ++i) {
    if (inside_cell(objs[i], gamma)) inside.push_back(i);
    else if (outside_cell(objs[i], gamma)) outside.push_back(i);
    else crossing.push_back(i);
  }
  if (inside.size() == n || outside.size() == n) {
    ++ctx.stats.fallbacks;
    add_all_edges(g, sink);
    return;
  }
  const auto hs = boundary_hitting_set(gamma, objs, crossing, ctx.d_star, &ctx.stats.hitting);
  const auto stars = hit_lists(objs, hs.points);
  std::vector<std::vector<std::uint32_t>> stars_of(n);
  for (std::uint32_t s = 0; s < stars.size(); ++s) {
    for (Vertex v : stars[s]) {
      lv.edge(stars[s].front(), v);
      stars_of[v].push_back(s);
    }
  }
  std::vector<Vertex> seen(stars.size(), static_cast<Vertex>(-1));
  for (Vertex u = 0; u < n; ++u) {
    for (auto s : stars_of[u]) seen[s] = u;
    for (Vertex w : g.neighbors(u)) {
      for (auto s : stars_of[w]) {
        if (seen[s] == u) continue;
        seen[s] = u;
        lv.edge(u, w);
      }
    }
  }
  auto rec = [&](std::span<const GeometricObject> o, const IntersectionGraph& sg, EdgeSink& sk) {
    fat_3hop(o, sg, sk, ctx);
  };
  recurse_on(objs, g, sink, inside, rec);
  recurse_on(objs, g, sink, outside, rec);
}

inline void fat_tk(std::span<const GeometricObject> objs, const IntersectionGraph& g, int k, EdgeSink& sink,
                   FatContext& ctx) {
  if (k < 2) {
    fat_3hop(objs, g, sink, ctx);
    return;
  }
  const std::size_t n = objs.size();
  if (n <= ctx.opt.base_case) {
    add_all_edges(g, sink);
    return;
  }
  FatLevel lv{objs, g, sink, ctx};
  const int d = objs.front().dimension();
  const auto r = static_cast<std::size_t>(std::max<std::int64_t>(2, alpha(k - 1, static_cast<std::int64_t>(n))));
  const auto pts = jittered_leftmost_points(objs, ctx.opt.jitter_seed);
  const auto cells = quadtree_partition(pts, r, unit_root_cell(d));

  // Locate each object's exact leftmost point.
  std::vector<std::int32_t> cell_of(n, kNone);
  for (Vertex i = 0; i < n; ++i) {
    const Point p = leftmost_point(objs[i]);
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].cell.contains(p)) {
        cell_of[i] = static_cast<std::int32_t>(c);
        break;
      }
  }
  std::vector<std::vector<Vertex>> inside(cells.size());
  for (Vertex i = 0; i < n; ++i) {
    const auto c = cell_of[i];
    if (c != kNone && inside_cell(objs[i], cells[static_cast<std::size_t>(c)].cell)) inside[static_cast<std::size_t>(c)].push_back(i);
  }
  for (const auto& in : inside) {
    if (in.size() == n) {
      ++ctx.stats.fallbacks;
      fat_3hop(objs, g, sink, ctx);
      return;
    }
  }

  // Hitting points per cell, then the global list P (duplicates merged).
  std::vector<Point> P;
  std::vector<std::vector<std::uint32_t>> cell_points(cells.size());
  std::map<Point, std::uint32_t> point_id;
  auto add_point = [&](const Point& p) {
    auto [it, fresh] = point_id.emplace(p, static_cast<std::uint32_t>(P.size()));
    if (fresh) P.push_back(p);
    return it->second;
  };
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& gc = cells[c].cell;
    for (const QuadtreeCell* q : {&gc.outer, gc.inner ? &*gc.inner : nullptr}) {
      if (!q) continue;
      const auto cand = boundary_objects(*q, objs);
      for (auto& p : boundary_hitting_set(*q, objs, cand, ctx.d_star, &ctx.stats.hitting).points)
        cell_points[c].push_back(add_point(p));
    }
  }
  const auto hits = hit_lists(objs, P);

  // Inside objects to the lowest intersecting object hit by each point.
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (Vertex u : inside[c]) {
      for (auto p : cell_points[c]) {
        for (Vertex w : hits[p]) {
          if (w != u && g.has_edge(u, w)) {
            lv.edge(u, w);
            break;
          }
        }
      }
    }
  }

  // Assignment to the first hitting point; stars per point.
  std::vector<std::int32_t> assigned(n, kNone);
  for (std::uint32_t p = 0; p < P.size(); ++p)
    for (Vertex v : hits[p])
      if (assigned[v] == kNone) assigned[v] = static_cast<std::int32_t>(p);
  std::vector<std::vector<Vertex>> groups(P.size());
  for (Vertex v = 0; v < n; ++v)
    if (assigned[v] != kNone) groups[static_cast<std::size_t>(assigned[v])].push_back(v);
  std::erase_if(groups, [](const auto& gr) { return gr.empty(); });
  for (const auto& gr : groups)
    for (Vertex v : gr) lv.edge(gr.front(), v);

  // Union objects and the level below.
  if (groups.size() >= 2) {
    std::vector<GeometricObject> unions;
    unions.reserve(groups.size());
    for (const auto& gr : groups) {
      std::vector<GeometricObject> members;
      for (Vertex v : gr) members.push_back(objs[v]);
      unions.push_back(GeometricObject::union_of(std::move(members)));
    }
    const auto q = quotient_union_graph(g, groups);
    EdgeSink h_sink;
    fat_tk(unions, q.graph, k - 1, h_sink, ctx);
    for (auto [a, b] : h_sink.take()) {
      const Edge w = q.witness_of(a, b);
      lv.edge(w.first, w.second);
    }
  }

  for (const auto& in : inside)
    recurse_on(objs, g, sink, in, [&](std::span<const GeometricObject> o, const IntersectionGraph& sg, EdgeSink& sk) {
      fat_tk(o, sg, k, sk, ctx);
    });
}

// Balls and full-dimensional boxes; a box flat in some axis is a segment
// or a point and not fat.
inline bool fat_piece(const GeometricObject& u) {
  if (u.shape() == Shape::ball) return true;
  if (u.shape() != Shape::box) return false;
  for (int a = 0; a < u.dimension(); ++a)
    if (!(u.lo()[a] < u.hi()[a])) return false;
  return true;
}

inline void require_fat_kinds(std::span<const GeometricObject> objects) {
  for (const auto& u : objects) {
    bool ok = fat_piece(u);
    if (u.shape() == Shape::union_set)
      ok = std::all_of(u.members().begin(), u.members().end(), [](const auto& m) { return fat_piece(m); });
    if (!ok) throw InputError("fat constructions support balls, full-dimensional boxes and their unions");
  }
}

}  // namespace detail

// Runs the construction per shift group and merges the results. k = 1 is
// the 3-hop construction.
inline Spanner fat_spanner(std::span<const GeometricObject> objects, const IntersectionGraph& g, int k,
                           const FatOptions& opt = {}, FatStats* stats_out = nullptr) {
  if (k < 1) throw InputError("fat_spanner: k must be at least 1");
  if (objects.size() != g.size()) throw InputError("fat_spanner: graph and object count differ");
  detail::require_fat_kinds(objects);
  Spanner s;
  s.stretch = static_cast<int>(stretch_bound(Family::fat, k));
  s.construction = k == 1 ? "fat-I" : "fat-II";
  const int d = objects.empty() ? 2 : objects.front().dimension();
  const int d_star = 2 * d + 1;
  detail::FatContext ctx{d_star, opt, {}};

  const AffineMap map = unit_cube_map(objects);
  std::vector<GeometricObject> mapped;
  mapped.reserve(objects.size());
  for (const auto& u : objects) mapped.push_back(transform(u, map));
  const IntersectionGraph mapped_graph = map.identity() ? IntersectionGraph() : build_intersection_graph(mapped);
  const IntersectionGraph& gt = map.identity() ? g : mapped_graph;

  EdgeSink sink;
  const auto groups = shift_groups(mapped, d_star);
  std::vector<std::uint32_t> mask(objects.size(), 0);
  for (std::size_t j = 0; j < groups.size(); ++j)
    for (auto i : groups[j]) mask[i] |= 1u << j;
  for (auto [u, v] : gt.edges())
    if ((mask[u] & mask[v]) == 0) {
      ++ctx.stats.uncovered_pairs;
      sink.add(u, v);
    }

  for (int j = 0; j < d_star; ++j) {
    const auto& grp = groups[static_cast<std::size_t>(j)];
    std::vector<Vertex> members(grp.begin(), grp.end());
    auto sub = induced(gt, members);
    std::vector<GeometricObject> shifted;
    shifted.reserve(members.size());
    for (Vertex v : sub.to_parent) shifted.push_back(shift_object(mapped[v], j, d_star));
    EdgeSink child(&sink, sub.to_parent);
    if (k == 1) detail::fat_3hop(shifted, sub.graph, child, ctx);
    else detail::fat_tk(shifted, sub.graph, k, child, ctx);
  }

  for (auto [u, v] : sink.take()) {
    if (g.has_edge(u, v)) s.edges.emplace_back(u, v);
    else ++ctx.stats.dropped_edges;
  }
  if (!map.identity())
    for (auto [u, v] : g.edges())
      if (!gt.has_edge(u, v)) s.edges.emplace_back(u, v);
  s.canonicalize();

  s.parameters = {{"d", d},
                  {"d_star", d_star},
                  {"k", k},
                  {"jitter_seed", static_cast<std::int64_t>(opt.jitter_seed)},
                  {"n0", static_cast<std::int64_t>(opt.base_case)},
                  {"hit_violations", static_cast<std::int64_t>(ctx.stats.hitting.violations)},
                  {"uncovered_pairs", static_cast<std::int64_t>(ctx.stats.uncovered_pairs)},
                  {"dropped_edges", static_cast<std::int64_t>(ctx.stats.dropped_edges)}};
  if (k >= 2)
    s.parameters["r"] = std::max<std::int64_t>(2, alpha(k - 1, std::max<std::int64_t>(1, static_cast<std::int64_t>(objects.size()))));
  if (stats_out) *stats_out = ctx.stats;
  return s;
}

inline Spanner fat_spanner_3hop(std::span<const GeometricObject> objects, const IntersectionGraph& g,
                                const FatOptions& opt = {}) {
  return fat_spanner(objects, g, 1, opt);
}

inline Spanner fat_spanner_tk(std::span<const GeometricObject> objects, const IntersectionGraph& g, int k,
                              const FatOptions& opt = {}) {
  return fat_spanner(objects, g, k, opt);
}

}  // namespace hopspan
