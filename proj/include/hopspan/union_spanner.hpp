#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <vector>

#include "graph.hpp"

namespace hopspan {

struct Probe {
  Point p;
  std::size_t depth = 0;
};

struct ShallowCell {
  AxisBox box;  // closed
  std::vector<Vertex> containing;
  std::vector<Vertex> crossing;
  std::size_t probes = 0;
};

struct ShallowCuttingLevel {
  int i = 0;
  std::size_t k = 0;
  std::size_t crossing_bound = 0;
  std::vector<ShallowCell> cells;
  std::size_t max_crossing = 0;
  std::size_t required_probes = 0;
  int max_split_depth = 0;
};

inline constexpr int kMaxShallowSplitDepth = 48;

namespace detail {

inline void require_planar_union_kinds(std::span<const GeometricObject> objects) {
  for (const auto& u : objects) {
    if (u.dimension() != 2 || (u.shape() != Shape::ball && u.shape() != Shape::box))
      throw InputError("shallow cuttings support planar disks and boxes");
  }
}

inline bool contains_box(const GeometricObject& u, const AxisBox& b) {
  if (u.shape() == Shape::ball) return maxdist2_point_box(u.center(), b) <= sq(u.radius());
  for (int i = 0; i < 2; ++i)
    if (b.lo[i] < u.lo()[i] || b.hi[i] > u.hi()[i]) return false;
  return true;
}

inline bool meets_box(const GeometricObject& u, const AxisBox& b) {
  if (!u.bounds().overlaps(b)) return false;
  if (u.shape() == Shape::ball) return dist2_point_box(u.center(), b) <= sq(u.radius());
  return true;
}

inline AxisBox bounding_box(std::span<const GeometricObject> objects) {
  AxisBox b = objects.front().bounds();
  for (const auto& u : objects) b.merge(u.bounds());
  return b;
}

}  // namespace detail

// Bucket grid answering depth queries.
class DepthIndex {
 public:
  explicit DepthIndex(std::span<const GeometricObject> objects) : objs_(objects) {
    if (objects.empty()) return;
    box_ = detail::bounding_box(objects);
    side_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(objects.size()))));
    buckets_.resize(side_ * side_);
    for (Vertex i = 0; i < objects.size(); ++i) {
      const auto& b = objects[i].bounds();
      const auto [x0, y0] = bucket(b.lo);
      const auto [x1, y1] = bucket(b.hi);
      for (std::size_t x = x0; x <= x1; ++x)
        for (std::size_t y = y0; y <= y1; ++y) buckets_[x * side_ + y].push_back(i);
    }
  }

  std::vector<Vertex> containing(const Point& p) const {
    std::vector<Vertex> out;
    if (objs_.empty() || !box_.contains(p)) return out;
    const auto [x, y] = bucket(p);
    for (Vertex i : buckets_[x * side_ + y])
      if (contains_point(objs_[i], p)) out.push_back(i);
    return out;
  }
  std::size_t depth(const Point& p) const { return containing(p).size(); }

 private:
  std::pair<std::size_t, std::size_t> bucket(const Point& p) const {
    auto idx = [&](int a) {
      const double ext = box_.hi[a] - box_.lo[a];
      if (!(ext > 0)) return std::size_t{0};
      const double f = (p[a] - box_.lo[a]) / ext * static_cast<double>(side_);
      return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(side_ - 1)));
    };
    return {idx(0), idx(1)};
  }

  std::span<const GeometricObject> objs_;
  AxisBox box_;
  std::size_t side_ = 1;
  std::vector<std::vector<Vertex>> buckets_;
};

// Grid of ceil(sqrt(4n))^2 cell-centred points over the bounding box plus
// every object's centre, with depths.
inline std::vector<Probe> default_probes(std::span<const GeometricObject> objects, const DepthIndex& index) {
  std::vector<Probe> out;
  if (objects.empty()) return out;
  const AxisBox b = detail::bounding_box(objects);
  const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(4.0 * static_cast<double>(objects.size()))));
  for (std::size_t x = 0; x < g; ++x)
    for (std::size_t y = 0; y < g; ++y) {
      Point p{b.lo[0] + (static_cast<double>(x) + 0.5) / static_cast<double>(g) * (b.hi[0] - b.lo[0]),
              b.lo[1] + (static_cast<double>(y) + 0.5) / static_cast<double>(g) * (b.hi[1] - b.lo[1])};
      out.push_back({p, 0});
    }
  for (const auto& u : objects) {
    if (u.shape() == Shape::ball) out.push_back({u.center(), 0});
    else out.push_back({{0.5 * (u.lo()[0] + u.hi()[0]), 0.5 * (u.lo()[1] + u.hi()[1])}, 0});
  }
  for (auto& pr : out) pr.depth = index.depth(pr.p);
  return out;
}

// Quadtree refinement of the bounding box: a node is kept once at most
// n/r objects cross it, and dropped when it holds no probe of depth <= k.
inline ShallowCuttingLevel shallow_cutting(std::span<const GeometricObject> objects, std::size_t k, double r,
                                           std::span<const Probe> probes) {
  detail::require_planar_union_kinds(objects);
  ShallowCuttingLevel lv;
  lv.k = k;
  const std::size_t n = objects.size();
  lv.crossing_bound = static_cast<std::size_t>(std::floor(static_cast<double>(n) / r + 1e-9));
  if (n == 0) return lv;

  struct Node {
    AxisBox box;
    std::vector<Vertex> containing, crossing;
    std::vector<std::uint32_t> probes;
    int depth;
  };
  Node root{detail::bounding_box(objects), {}, {}, {}, 0};
  for (Vertex i = 0; i < n; ++i) {
    if (detail::contains_box(objects[i], root.box)) root.containing.push_back(i);
    else if (detail::meets_box(objects[i], root.box)) root.crossing.push_back(i);
  }
  for (std::uint32_t p = 0; p < probes.size(); ++p)
    if (probes[p].depth <= k && root.box.contains(probes[p].p)) root.probes.push_back(p);
  lv.required_probes = root.probes.size();

  std::vector<Node> stack;
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (node.probes.empty()) continue;
    lv.max_split_depth = std::max(lv.max_split_depth, node.depth);
    if (node.crossing.size() <= lv.crossing_bound) {
      lv.max_crossing = std::max(lv.max_crossing, node.crossing.size());
      lv.cells.push_back({std::move(node.box), std::move(node.containing), std::move(node.crossing), node.probes.size()});
      continue;
    }
    if (node.depth >= kMaxShallowSplitDepth) {
      std::ostringstream msg;
      msg << "shallow cutting did not converge: level k=" << k << ", cell [" << node.box.lo[0] << ","
          << node.box.hi[0] << "]x[" << node.box.lo[1] << "," << node.box.hi[1] << "] still crossed by "
          << node.crossing.size() << " objects (bound " << lv.crossing_bound << ")";
      throw StructuralError(msg.str());
    }
    const double mx = 0.5 * (node.box.lo[0] + node.box.hi[0]);
    const double my = 0.5 * (node.box.lo[1] + node.box.hi[1]);
    for (int q = 3; q >= 0; --q) {
      Node child;
      child.depth = node.depth + 1;
      child.box.lo = {q & 1 ? mx : node.box.lo[0], q & 2 ? my : node.box.lo[1]};
      child.box.hi = {q & 1 ? node.box.hi[0] : mx, q & 2 ? node.box.hi[1] : my};
      for (auto p : node.probes) {
        const Point& pt = probes[p].p;
        if (((pt[0] >= mx) == bool(q & 1)) && ((pt[1] >= my) == bool(q & 2))) child.probes.push_back(p);
      }
      if (child.probes.empty()) continue;
      child.containing = node.containing;
      for (Vertex u : node.crossing) {
        if (detail::contains_box(objects[u], child.box)) child.containing.push_back(u);
        else if (detail::meets_box(objects[u], child.box)) child.crossing.push_back(u);
      }
      std::sort(child.containing.begin(), child.containing.end());
      stack.push_back(std::move(child));
    }
  }
  return lv;
}

namespace detail {

// A point of u and v, away from both boundaries when the overlap has
// interior.
inline std::optional<Point> intersection_witness(const GeometricObject& u, const GeometricObject& v) {
  std::vector<Point> cands;
  if (u.shape() == Shape::ball && v.shape() == Shape::ball) {
    const double dx = v.center()[0] - u.center()[0], dy = v.center()[1] - u.center()[1];
    const double D = std::sqrt(dx * dx + dy * dy);
    const double r1 = u.radius(), r2 = v.radius();
    if (D <= std::abs(r1 - r2) || D == 0) {
      cands.push_back(r1 <= r2 ? u.center() : v.center());
    } else {
      const double lo = std::max(-r1, D - r2), hi = std::min(r1, D + r2);
      for (double t : {0.5 * (lo + hi), lo, hi}) cands.push_back({u.center()[0] + dx / D * t, u.center()[1] + dy / D * t});
    }
  } else if (u.shape() == Shape::box && v.shape() == Shape::box) {
    Point p(2);
    for (int a = 0; a < 2; ++a) p[a] = 0.5 * (std::max(u.lo()[a], v.lo()[a]) + std::min(u.hi()[a], v.hi()[a]));
    cands.push_back(p);
  } else {
    const auto& ball = u.shape() == Shape::ball ? u : v;
    const auto& box = u.shape() == Shape::ball ? v : u;
    Point q(2);
    for (int a = 0; a < 2; ++a) q[a] = std::clamp(ball.center()[a], box.lo()[a], box.hi()[a]);
    cands.push_back(q);
  }
  for (const auto& p : cands)
    if (contains_point(u, p) && contains_point(v, p)) return p;
  return std::nullopt;
}

inline bool within_two_hops(const IntersectionGraph& s, Vertex u, Vertex v) {
  if (s.has_edge(u, v)) return true;
  const auto& a = s.neighbors(u);
  const auto& b = s.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

}  // namespace detail

struct UnionDiagnostics {
  std::vector<ShallowCuttingLevel> levels;
  std::size_t patch_rounds = 0;
  std::size_t witness_probes = 0;
  std::size_t dropped_edges = 0;
};

inline constexpr int kMaxPatchRounds = 3;

// Stars through a containing object of every shallow-cutting cell, over
// the levels k = 2^i. Graph edges whose witness point was not sampled are
// patched by adding that point as a probe and rebuilding.
inline Spanner two_hop_spanner_union(std::span<const GeometricObject> objects, const IntersectionGraph& g,
                                     UnionDiagnostics* diag = nullptr) {
  detail::require_planar_union_kinds(objects);
  if (objects.size() != g.size()) throw InputError("two_hop_spanner_union: graph and object count differ");
  const std::size_t n = objects.size();
  Spanner s;
  s.stretch = 2;
  s.construction = "union-2hop";
  UnionDiagnostics local;
  UnionDiagnostics& dg = diag ? *diag : local;
  const int top = n >= 2 ? static_cast<int>(std::bit_width(n)) : 1;  // floor(log2 n) + 1

  const DepthIndex index(objects);
  const auto base_probes = default_probes(objects, index);
  std::vector<std::vector<Probe>> extra(static_cast<std::size_t>(top) + 1);

  for (int round = 0;; ++round) {
    dg.levels.clear();
    EdgeSink sink;
    for (int i = 2; i <= top; ++i) {
      std::vector<Probe> probes = base_probes;
      probes.insert(probes.end(), extra[static_cast<std::size_t>(i)].begin(), extra[static_cast<std::size_t>(i)].end());
      const std::size_t k = std::size_t{1} << i;
      auto lv = shallow_cutting(objects, k, static_cast<double>(n) / std::ldexp(1.0, i - 2), probes);
      lv.i = i;
      for (const auto& c : lv.cells) {
        if (c.containing.empty()) continue;
        const Vertex center = c.containing.front();
        for (Vertex v : c.containing) sink.add(center, v);
        for (Vertex v : c.crossing) sink.add(center, v);
      }
      dg.levels.push_back(std::move(lv));
    }
    std::vector<Edge> kept;
    dg.dropped_edges = 0;
    for (auto e : sink.take()) {
      if (g.has_edge(e.first, e.second)) kept.push_back(e);
      else ++dg.dropped_edges;
    }
    const auto sg = IntersectionGraph::from_edges(n, kept);
    std::size_t missing = 0;
    for (auto [u, v] : g.edges()) {
      if (detail::within_two_hops(sg, u, v)) continue;
      ++missing;
      if (round >= kMaxPatchRounds) continue;
      const auto w = detail::intersection_witness(objects[u], objects[v]);
      if (!w) continue;
      const std::size_t dep = index.depth(*w);
      const int lvl = std::clamp(static_cast<int>(std::bit_width(dep)), 2, top);
      extra[static_cast<std::size_t>(lvl)].push_back({*w, dep});
      ++dg.witness_probes;
    }
    if (missing == 0) {
      s.edges = std::move(kept);
      dg.patch_rounds = static_cast<std::size_t>(round);
      break;
    }
    if (round >= kMaxPatchRounds)
      throw StructuralError("union-2hop: " + std::to_string(missing) + " edges remain uncovered after " +
                            std::to_string(kMaxPatchRounds) + " patch rounds");
  }
  std::size_t cells = 0;
  for (const auto& lv : dg.levels) cells += lv.cells.size();
  s.parameters = {{"levels", static_cast<std::int64_t>(dg.levels.size())},
                  {"cells", static_cast<std::int64_t>(cells)},
                  {"probes", static_cast<std::int64_t>(base_probes.size())},
                  {"witness_probes", static_cast<std::int64_t>(dg.witness_probes)},
                  {"patch_rounds", static_cast<std::int64_t>(dg.patch_rounds)}};
  return s;
}

}  // namespace hopspan
