#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "graph.hpp"

namespace hopspan {

struct Interval {
  double lo, hi;
};

// One interval of the greedy cover: either the single point {left} that
// opens a run, or the half-open range (left, right].
struct CoverInterval {
  double left, right;
  bool point;
  std::size_t cover;  // index of the covering segment
};

struct IntervalCover {
  std::vector<CoverInterval> intervals;
};

// Greedy cover: x_k is the largest right end among segments starting at or
// before x_{k-1} (lowest index on ties). A run ends when no such segment
// reaches past x_{k-1}; the next run opens at the next left endpoint.
inline IntervalCover cover_intervals(std::span<const Interval> H) {
  IntervalCover out;
  std::vector<std::size_t> order(H.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return H[a].lo != H[b].lo ? H[a].lo < H[b].lo : a < b;
  });
  std::size_t pos = 0;
  while (pos < order.size()) {
    double x = H[order[pos]].lo;
    std::size_t best = order[pos];
    bool first = true;
    for (;;) {
      while (pos < order.size() && H[order[pos]].lo <= x) {
        const std::size_t c = order[pos++];
        if (H[c].hi > H[best].hi || (H[c].hi == H[best].hi && c < best)) best = c;
      }
      if (first) {
        out.intervals.push_back({x, x, true, best});
        first = false;
      }
      if (H[best].hi <= x) break;
      out.intervals.push_back({x, H[best].hi, false, best});
      x = H[best].hi;
    }
  }
  return out;
}

namespace detail {

struct HSeg {
  double y, x0, x1;
  Vertex id;
};
struct VSeg {
  double x, y0, y1;  // infinite for lines
  Vertex id;
};

// Horizontal segments against vertical lines (each V entry is treated as
// spanning every y of H).
inline void seg_line_edges(std::span<const HSeg> H, std::span<const VSeg> L, EdgeSink& sink) {
  if (H.empty() || L.empty()) return;
  std::vector<VSeg> lines(L.begin(), L.end());
  std::sort(lines.begin(), lines.end(), [](const VSeg& a, const VSeg& b) { return a.x != b.x ? a.x < b.x : a.id < b.id; });
  auto first_at_least = [&](double x) {
    return std::lower_bound(lines.begin(), lines.end(), x, [](const VSeg& l, double v) { return l.x < v; });
  };
  auto first_above = [&](double x) {
    return std::upper_bound(lines.begin(), lines.end(), x, [](double v, const VSeg& l) { return v < l.x; });
  };
  std::vector<Interval> iv;
  iv.reserve(H.size());
  for (const auto& h : H) iv.push_back({h.x0, h.x1});
  for (const auto& c : cover_intervals(iv).intervals) {
    const auto b = c.point ? first_at_least(c.left) : first_above(c.left);
    const auto e = first_above(c.right);
    for (auto it = b; it < e; ++it) sink.add(H[c.cover].id, it->id);
  }
  for (const auto& h : H) {
    const auto l = first_at_least(h.x0);
    if (l != lines.end() && l->x <= h.x1) sink.add(h.id, l->id);
    const auto r = first_above(h.x1);
    if (r != lines.begin() && std::prev(r)->x >= h.x0) sink.add(h.id, std::prev(r)->id);
  }
}

inline void seg_slab(std::vector<HSeg> H, std::vector<VSeg> V, double ylo, double yhi, EdgeSink& sink) {
  if (H.empty() || V.empty()) return;
  std::vector<VSeg> lng, shrt;
  for (const auto& v : V) (v.y0 <= ylo && v.y1 >= yhi ? lng : shrt).push_back(v);
  seg_line_edges(H, lng, sink);
  if (shrt.empty()) return;
  if (H.size() <= 1) {
    for (const auto& h : H)
      for (const auto& v : shrt)
        if (h.x0 <= v.x && v.x <= h.x1 && v.y0 <= h.y && h.y <= v.y1) sink.add(h.id, v.id);
    return;
  }
  const std::size_t mid = H.size() / 2;
  std::vector<HSeg> high(H.begin() + static_cast<std::ptrdiff_t>(mid), H.end());
  H.resize(mid);
  const double ya = H.back().y, yb = high.front().y;
  std::vector<VSeg> vlow, vhigh;
  for (const auto& v : shrt) {
    if (v.y0 <= ya && v.y1 >= ylo) vlow.push_back(v);
    if (v.y0 <= yhi && v.y1 >= yb) vhigh.push_back(v);
  }
  shrt.clear();
  seg_slab(std::move(H), std::move(vlow), ylo, ya, sink);
  seg_slab(std::move(high), std::move(vhigh), yb, yhi, sink);
}

// Every pair of collinear overlapping intervals, grouped by key.
struct Collinear {
  double key, lo, hi;
  Vertex id;
};

inline void collinear_pairs(std::vector<Collinear> items, EdgeSink& sink) {
  std::sort(items.begin(), items.end(), [](const Collinear& a, const Collinear& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.id < b.id;
  });
  std::vector<const Collinear*> active;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 0 || items[i].key != items[i - 1].key) active.clear();
    std::erase_if(active, [&](const Collinear* a) { return a->hi < items[i].lo; });
    for (const auto* a : active) sink.add(a->id, items[i].id);
    active.push_back(&items[i]);
  }
}

inline void seg_spanner_parts(std::span<const HSeg> H, std::span<const VSeg> V, EdgeSink& sink) {
  std::vector<Collinear> hh, vv;
  for (const auto& h : H) hh.push_back({h.y, h.x0, h.x1, h.id});
  for (const auto& v : V) vv.push_back({v.x, v.y0, v.y1, v.id});
  collinear_pairs(std::move(hh), sink);
  collinear_pairs(std::move(vv), sink);
  if (H.empty()) return;
  std::vector<HSeg> hs(H.begin(), H.end());
  std::sort(hs.begin(), hs.end(), [](const HSeg& a, const HSeg& b) { return a.y != b.y ? a.y < b.y : a.id < b.id; });
  const double ylo = hs.front().y, yhi = hs.back().y;
  std::vector<VSeg> vs;
  for (const auto& v : V)
    if (v.y0 <= yhi && v.y1 >= ylo) vs.push_back(v);
  seg_slab(std::move(hs), std::move(vs), ylo, yhi, sink);
}

inline void split_segments(std::span<const GeometricObject> objects, std::vector<HSeg>& H, std::vector<VSeg>& V,
                           bool allow_vsegments) {
  const double inf = std::numeric_limits<double>::infinity();
  for (Vertex i = 0; i < objects.size(); ++i) {
    const auto& u = objects[i];
    switch (u.kind()) {
      case Kind::h_segment: H.push_back({u.lo()[1], u.lo()[0], u.hi()[0], i}); break;
      case Kind::v_line: V.push_back({u.line_x(), -inf, inf, i}); break;
      case Kind::v_segment:
        if (allow_vsegments) {
          V.push_back({u.lo()[0], u.lo()[1], u.hi()[1], i});
          break;
        }
        [[fallthrough]];
      default:
        throw InputError(allow_vsegments ? "segment spanner expects horizontal/vertical segments and vertical lines"
                                         : "segment-line spanner expects horizontal segments and vertical lines");
    }
  }
}

}  // namespace detail

inline Spanner seg_line_spanner(std::span<const GeometricObject> objects) {
  std::vector<detail::HSeg> H;
  std::vector<detail::VSeg> V;
  detail::split_segments(objects, H, V, false);
  EdgeSink sink;
  std::vector<detail::Collinear> hh, vv;
  for (const auto& h : H) hh.push_back({h.y, h.x0, h.x1, h.id});
  for (const auto& v : V) vv.push_back({v.x, v.y0, v.y1, v.id});
  detail::collinear_pairs(std::move(hh), sink);
  detail::collinear_pairs(std::move(vv), sink);
  detail::seg_line_edges(H, V, sink);
  Spanner s;
  s.edges = sink.take();
  s.stretch = 3;
  s.construction = "seg-line";
  s.parameters = {{"horizontal", static_cast<std::int64_t>(H.size())}, {"lines", static_cast<std::int64_t>(V.size())}};
  return s;
}

inline Spanner seg_spanner(std::span<const GeometricObject> objects) {
  std::vector<detail::HSeg> H;
  std::vector<detail::VSeg> V;
  detail::split_segments(objects, H, V, true);
  EdgeSink sink;
  detail::seg_spanner_parts(H, V, sink);
  Spanner s;
  s.edges = sink.take();
  s.stretch = 3;
  s.construction = "seg";
  s.parameters = {{"horizontal", static_cast<std::int64_t>(H.size())}, {"vertical", static_cast<std::int64_t>(V.size())}};
  return s;
}

namespace detail {

// Range-tree biclique cover of the pairs (rectangle a, rectangle b) where
// a contains the lower-left corner of b. Each biclique (A, B) adds stars
// from min A to B and from min B to A.
class CornerCover {
 public:
  CornerCover(std::span<const AxisBox> rects, EdgeSink& sink) : rects_(rects) {
    const std::size_t n = rects.size();
    if (n == 0) return;
    byx_.resize(n);
    std::iota(byx_.begin(), byx_.end(), Vertex{0});
    std::sort(byx_.begin(), byx_.end(), [&](Vertex a, Vertex b) {
      const auto &pa = rects_[a].lo, &pb = rects_[b].lo;
      if (pa[0] != pb[0]) return pa[0] < pb[0];
      if (pa[1] != pb[1]) return pa[1] < pb[1];
      return a < b;
    });
    xs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) xs_[i] = rects_[byx_[i]].lo[0];
    ysorted_.resize(4 * n);
    build(1, 0, n);
    for (Vertex a = 0; a < n; ++a) {
      const auto l = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), rects_[a].lo[0]) - xs_.begin());
      const auto r = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), rects_[a].hi[0]) - xs_.begin());
      query_x(1, 0, n, l, r, a);
    }
    for (auto& [key, b] : buckets_) {
      const auto& ys = ysorted_[b.node];
      const Vertex amin = *std::min_element(b.A.begin(), b.A.end());
      Vertex bmin = ys[b.lo];
      for (std::size_t i = b.lo; i < b.hi; ++i) bmin = std::min(bmin, ys[i]);
      for (std::size_t i = b.lo; i < b.hi; ++i) sink.add(amin, ys[i]);
      for (Vertex a : b.A) sink.add(bmin, a);
      ++bicliques;
    }
  }

  std::size_t bicliques = 0;

 private:
  struct Bucket {
    std::size_t node, lo, hi;
    std::vector<Vertex> A;
  };

  void build(std::size_t node, std::size_t l, std::size_t r) {
    auto& ys = ysorted_[node];
    ys.assign(byx_.begin() + static_cast<std::ptrdiff_t>(l), byx_.begin() + static_cast<std::ptrdiff_t>(r));
    std::sort(ys.begin(), ys.end(), [&](Vertex a, Vertex b) {
      const double ya = rects_[a].lo[1], yb = rects_[b].lo[1];
      return ya != yb ? ya < yb : a < b;
    });
    if (r - l <= 1) return;
    const std::size_t m = (l + r) / 2;
    build(2 * node, l, m);
    build(2 * node + 1, m, r);
  }

  void query_x(std::size_t node, std::size_t l, std::size_t r, std::size_t ql, std::size_t qr, Vertex a) {
    if (qr <= l || r <= ql) return;
    if (ql <= l && r <= qr) {
      const auto& ys = ysorted_[node];
      auto ykey = [&](Vertex v) { return rects_[v].lo[1]; };
      const auto lo = static_cast<std::size_t>(
          std::lower_bound(ys.begin(), ys.end(), rects_[a].lo[1], [&](Vertex v, double y) { return ykey(v) < y; }) - ys.begin());
      const auto hi = static_cast<std::size_t>(
          std::upper_bound(ys.begin(), ys.end(), rects_[a].hi[1], [&](double y, Vertex v) { return y < ykey(v); }) - ys.begin());
      query_y(node, 1, 0, ys.size(), lo, hi, a);
      return;
    }
    const std::size_t m = (l + r) / 2;
    query_x(2 * node, l, m, ql, qr, a);
    query_x(2 * node + 1, m, r, ql, qr, a);
  }

  void query_y(std::size_t node, std::size_t sub, std::size_t l, std::size_t r, std::size_t ql, std::size_t qr,
               Vertex a) {
    if (qr <= l || r <= ql || l >= r) return;
    if (ql <= l && r <= qr) {
      auto& b = buckets_[(static_cast<std::uint64_t>(node) << 32) | sub];
      if (b.A.empty()) {
        b.node = node;
        b.lo = l;
        b.hi = r;
      }
      b.A.push_back(a);
      return;
    }
    const std::size_t m = (l + r) / 2;
    query_y(node, 2 * sub, l, m, ql, qr, a);
    query_y(node, 2 * sub + 1, m, r, ql, qr, a);
  }

  std::span<const AxisBox> rects_;
  std::vector<Vertex> byx_;
  std::vector<double> xs_;
  std::vector<std::vector<Vertex>> ysorted_;
  std::map<std::uint64_t, Bucket> buckets_;
};

}  // namespace detail

struct RectDiagnostics {
  std::size_t side_edges = 0;
  std::size_t corner_edges = 0;
  std::size_t bicliques = 0;
};

// Side intersections through the segment spanner on the 4n rectangle sides,
// plus a biclique cover for corner containment.
inline Spanner rect_spanner(std::span<const GeometricObject> objects, RectDiagnostics* diag = nullptr) {
  std::vector<AxisBox> rects;
  for (const auto& u : objects) {
    if (u.shape() != Shape::box || u.dimension() != 2) throw InputError("rectangle spanner expects planar boxes");
    rects.push_back(u.bounds());
  }
  const std::size_t n = rects.size();
  std::vector<detail::HSeg> H;
  std::vector<detail::VSeg> V;
  for (Vertex i = 0; i < n; ++i) {
    const auto& b = rects[i];
    H.push_back({b.lo[1], b.lo[0], b.hi[0], 4 * i});
    H.push_back({b.hi[1], b.lo[0], b.hi[0], 4 * i + 1});
    V.push_back({b.lo[0], b.lo[1], b.hi[1], 4 * i + 2});
    V.push_back({b.hi[0], b.lo[1], b.hi[1], 4 * i + 3});
  }
  EdgeSink side_sink;
  detail::seg_spanner_parts(H, V, side_sink);
  EdgeSink sink;
  RectDiagnostics dg;
  for (auto [a, b] : side_sink.take()) {
    if (a / 4 == b / 4) continue;
    sink.add(a / 4, b / 4);
    ++dg.side_edges;
  }
  EdgeSink corner_sink;
  detail::CornerCover cover(rects, corner_sink);
  dg.bicliques = cover.bicliques;
  for (auto [a, b] : corner_sink.take()) {
    sink.add(a, b);
    ++dg.corner_edges;
  }
  Spanner s;
  s.edges = sink.take();
  s.stretch = 3;
  s.construction = "rect";
  s.parameters = {{"side_edges", static_cast<std::int64_t>(dg.side_edges)},
                  {"corner_edges", static_cast<std::int64_t>(dg.corner_edges)},
                  {"bicliques", static_cast<std::int64_t>(dg.bicliques)}};
  if (diag) *diag = dg;
  return s;
}

}  // namespace hopspan
