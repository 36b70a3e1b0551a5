#pragma once

// Reference implementations used only by tests. They share no code paths
// with the library beyond the object accessors.

#include <algorithm>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hopspan/hopspan.hpp"

namespace oracle {

using hopspan::Edge;
using hopspan::GeometricObject;
using hopspan::Kind;
using hopspan::Point;
using hopspan::Shape;
using hopspan::Vertex;

// Hop distances in the spanner by repeated boolean matrix products; n is
// limited by the bitset width.
constexpr std::size_t kMaxN = 512;
using Row = std::bitset<kMaxN>;

inline std::vector<std::vector<int>> hop_matrix(std::size_t n, const std::vector<Edge>& s, int max_h) {
  std::vector<Row> adj(n), reach(n);
  for (auto [a, b] : s) {
    adj[a].set(b);
    adj[b].set(a);
  }
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    reach[i].set(i);
    d[i][i] = 0;
  }
  for (int h = 1; h <= max_h; ++h) {
    std::vector<Row> next(reach);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j]) next[i] |= adj[j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (next[i][j] && d[i][j] < 0) d[i][j] = h;
    reach.swap(next);
  }
  return d;
}

// Largest hop count over the graph's edges, max_h + 1 if some edge is not
// reachable within max_h.
inline int max_required_hops(std::size_t n, const std::vector<Edge>& g_edges, const std::vector<Edge>& s, int max_h) {
  const auto d = hop_matrix(n, s, max_h);
  int worst = 0;
  for (auto [a, b] : g_edges) worst = std::max(worst, d[a][b] < 0 ? max_h + 1 : d[a][b]);
  return worst;
}

// Intersection predicates in long double with direct formulas.
using LD = long double;

inline bool seg_seg(LD ax, LD ay, LD bx, LD by, LD cx, LD cy, LD dx, LD dy) {
  const LD den = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx);
  if (den != 0) {
    const LD s = ((cx - ax) * (dy - cy) - (cy - ay) * (dx - cx)) / den;
    const LD t = ((cx - ax) * (by - ay) - (cy - ay) * (bx - ax)) / den;
    return s >= 0 && s <= 1 && t >= 0 && t <= 1;
  }
  if ((cx - ax) * (by - ay) - (cy - ay) * (bx - ax) != 0) return false;  // parallel, not collinear
  auto proj = [&](LD x, LD y) { return (x - ax) * (bx - ax) + (y - ay) * (by - ay); };
  LD lo = std::min(proj(cx, cy), proj(dx, dy)), hi = std::max(proj(cx, cy), proj(dx, dy));
  const LD len = proj(bx, by);
  if (len == 0) return (ax == cx && ay == cy) || (ax == dx && ay == dy) || (lo <= 0 && hi >= 0 && lo != hi);
  return hi >= 0 && lo <= len;
}

inline bool boxes(const GeometricObject& a, const GeometricObject& b) {
  for (int i = 0; i < a.dimension(); ++i)
    if (a.hi()[i] < b.lo()[i] || b.hi()[i] < a.lo()[i]) return false;
  return true;
}

inline bool ball_ball(const GeometricObject& a, const GeometricObject& b) {
  LD d2 = 0;
  for (int i = 0; i < a.dimension(); ++i) d2 += (LD(a.center()[i]) - b.center()[i]) * (LD(a.center()[i]) - b.center()[i]);
  const LD r = LD(a.radius()) + b.radius();
  return d2 <= r * r;
}

inline bool ball_box(const GeometricObject& a, const GeometricObject& b) {
  LD d2 = 0;
  for (int i = 0; i < a.dimension(); ++i) {
    const LD c = a.center()[i];
    const LD q = std::clamp<LD>(c, b.lo()[i], b.hi()[i]);
    d2 += (c - q) * (c - q);
  }
  return d2 <= LD(a.radius()) * a.radius();
}

inline bool intersects(const GeometricObject& a, const GeometricObject& b) {
  if (a.shape() == Shape::union_set) {
    for (const auto& m : a.members())
      if (oracle::intersects(m, b)) return true;
    return false;
  }
  if (b.shape() == Shape::union_set) return oracle::intersects(b, a);
  if (a.shape() == Shape::ball && b.shape() == Shape::ball) return ball_ball(a, b);
  if (a.shape() == Shape::ball && b.shape() == Shape::box) return ball_box(a, b);
  if (a.shape() == Shape::box && b.shape() == Shape::ball) return ball_box(b, a);
  if (a.shape() == Shape::box && b.shape() == Shape::box) return boxes(a, b);
  if (a.shape() == Shape::line && b.shape() == Shape::line) return a.line_x() == b.line_x();
  // Every non-line object is connected, so a line meets it iff the line
  // crosses its x-extent.
  if (a.shape() == Shape::line) return b.lo()[0] <= a.line_x() && a.line_x() <= b.hi()[0];
  if (b.shape() == Shape::line) return oracle::intersects(b, a);
  if (a.shape() == Shape::polyline && b.shape() == Shape::polyline) {
    const auto& p = a.vertices();
    const auto& q = b.vertices();
    auto segs = [](const std::vector<Point>& v) {
      std::vector<std::pair<Point, Point>> s;
      if (v.size() == 1) s.emplace_back(v[0], v[0]);
      for (std::size_t i = 0; i + 1 < v.size(); ++i) s.emplace_back(v[i], v[i + 1]);
      return s;
    };
    for (const auto& [p0, p1] : segs(p))
      for (const auto& [q0, q1] : segs(q))
        if (seg_seg(p0[0], p0[1], p1[0], p1[1], q0[0], q0[1], q1[0], q1[1])) return true;
    return false;
  }
  throw std::logic_error("oracle::intersects: unsupported pair");
}

inline std::vector<Edge> graph_edges(const std::vector<GeometricObject>& objs) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < objs.size(); ++i)
    for (Vertex j = i + 1; j < objs.size(); ++j)
      if (oracle::intersects(objs[i], objs[j])) e.emplace_back(i, j);
  return e;
}

// Alignment decided by scanning every level from coarse to fine.
inline bool aligned_by_scan(const GeometricObject& u, double C) {
  const auto& b = u.bounds();
  const double ell = b.max_extent();
  for (int level = 0; level <= 52; ++level) {
    const double side = std::ldexp(1.0, -level);
    bool same = true;
    for (int i = 0; i < u.dimension() && same; ++i)
      same = std::floor(b.lo[i] / side) == std::floor(b.hi[i] / side);
    if (!same) return false;
    if (side <= C * ell) return true;
  }
  return false;
}

inline std::size_t depth(const Point& p, const std::vector<GeometricObject>& objs) {
  std::size_t c = 0;
  for (const auto& u : objs) {
    if (u.shape() == Shape::ball) {
      LD d2 = 0;
      for (std::size_t i = 0; i < p.size(); ++i) d2 += (LD(p[i]) - u.center()[i]) * (LD(p[i]) - u.center()[i]);
      c += d2 <= LD(u.radius()) * u.radius();
    } else if (u.shape() == Shape::box) {
      bool in = true;
      for (std::size_t i = 0; i < p.size(); ++i) in = in && u.lo()[i] <= p[i] && p[i] <= u.hi()[i];
      c += in;
    }
  }
  return c;
}

// log* computed on doubles.
inline int log_star(double n) {
  int c = 0;
  while (n > 1) {
    n = std::ceil(std::log2(n) - 1e-12);
    ++c;
  }
  return c;
}

inline std::vector<Edge> random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) e.emplace_back(i, j);
  return e;
}

}  // namespace oracle
