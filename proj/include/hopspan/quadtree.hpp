#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace hopspan {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic offset in [0, 2^-41) per (seed, id, axis).
inline double jitter(std::uint64_t seed, std::uint64_t id, int axis) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(id * 64 + static_cast<std::uint64_t>(axis)));
  return std::ldexp(static_cast<double>(h >> 11), -53 - 41);
}

inline std::vector<Point> jittered_leftmost_points(std::span<const GeometricObject> objects, std::uint64_t seed) {
  std::vector<Point> pts;
  pts.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Point p = leftmost_point(objects[i]);
    for (int a = 0; a < static_cast<int>(p.size()); ++a) p[a] += jitter(seed, i, a);
    pts.push_back(std::move(p));
  }
  return pts;
}

inline std::size_t centroid_bound(std::size_t n, int d) {
  const std::size_t w = std::size_t{1} << d;
  return (w * n + w) / (w + 1);  // ceil(2^d n / (2^d + 1))
}

namespace detail {

inline QuadtreeCell bounding_cell(std::span<const Point> pts, std::span<const std::size_t> idx) {
  AxisBox b{pts[idx.front()], pts[idx.front()]};
  for (std::size_t i : idx) b.merge({pts[i], pts[i]});
  auto c = smallest_containing_cell(b);
  if (!c) throw InputError("points do not fit in a common quadtree cell");
  return *c;
}

// Descends toward the heaviest child (lowest child mask on ties) while the
// cell holds more than the bound, or, in strict mode, all of the points.
inline QuadtreeCell centroid_of(std::span<const Point> pts, std::vector<std::size_t> idx, bool strict) {
  const std::size_t n = idx.size();
  const int d = static_cast<int>(pts[idx.front()].size());
  const std::size_t bound = centroid_bound(n, d);
  QuadtreeCell cell = bounding_cell(pts, idx);
  std::vector<std::vector<std::size_t>> parts(std::size_t{1} << d);
  while ((idx.size() > bound || (strict && idx.size() == n)) && cell.level < kMaxCellLevel) {
    for (auto& p : parts) p.clear();
    for (std::size_t i : idx) parts[cell.child_mask(pts[i])].push_back(i);
    unsigned best = 0;
    for (unsigned m = 1; m < parts.size(); ++m)
      if (parts[m].size() > parts[best].size()) best = m;
    cell = cell.child(best);
    idx.swap(parts[best]);
  }
  return cell;
}

}  // namespace detail

// A quadtree cell with at most ceil(2^d n / (2^d + 1)) points inside and
// at most that many outside.
inline QuadtreeCell quadtree_centroid(std::span<const Point> pts) {
  if (pts.empty()) throw InputError("quadtree_centroid: no points");
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::centroid_of(pts, std::move(idx), false);
}

struct PartitionCell {
  GeneralizedCell cell;
  std::vector<std::size_t> points;  // indices of points inside
};

inline QuadtreeCell unit_root_cell(int d, int level = -1) {
  return QuadtreeCell{level, std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)};
}

// Partition of the root cell into generalized cells holding at most r
// points each, by repeated centroid splitting. When the centroid cell is
// disjoint from the current hole, the region is cut along the children of
// their common ancestor so that no piece has two holes.
inline std::vector<PartitionCell> quadtree_partition(std::span<const Point> pts, std::size_t r,
                                                     std::optional<QuadtreeCell> root = std::nullopt) {
  if (r < 1) throw InputError("quadtree_partition: r must be positive");
  const int d = pts.empty() ? (root ? root->dimension() : 1) : static_cast<int>(pts.front().size());
  const QuadtreeCell top = root.value_or(unit_root_cell(d));
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!top.contains(pts[i])) throw InputError("quadtree_partition: point outside the root cell");
    all.push_back(i);
  }
  struct Item {
    QuadtreeCell outer;
    std::optional<QuadtreeCell> inner;
    std::vector<std::size_t> idx;
  };
  std::vector<PartitionCell> out;
  std::vector<Item> work;
  work.push_back({top, std::nullopt, std::move(all)});
  auto split = [&](const std::vector<std::size_t>& idx, const QuadtreeCell& c) {
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> res;
    for (std::size_t i : idx) (c.contains(pts[i]) ? res.first : res.second).push_back(i);
    return res;
  };
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.idx.size() <= r || it.outer.level >= kMaxCellLevel) {
      out.push_back({{it.outer, it.inner}, std::move(it.idx)});
      continue;
    }
    const QuadtreeCell c = detail::centroid_of(pts, it.idx, true);
    auto [in_c, rest] = split(it.idx, c);
    if (!it.inner) {
      work.push_back({it.outer, c, std::move(rest)});
      work.push_back({c, std::nullopt, std::move(in_c)});
      continue;
    }
    const QuadtreeCell& h = *it.inner;
    if (c.contains(h)) {
      work.push_back({it.outer, c, std::move(rest)});
      work.push_back({c, h, std::move(in_c)});
      continue;
    }
    const QuadtreeCell D = common_ancestor(c, h);
    auto [in_d, outside_d] = split(rest, D);
    if (!(D == it.outer)) work.push_back({it.outer, D, std::move(outside_d)});
    for (unsigned m = 0; m < (1u << d); ++m) {
      const QuadtreeCell ch = D.child(m);
      auto [in_ch, other] = split(in_d, ch);
      in_d = std::move(other);
      if (ch.contains(c)) {
        if (!(ch == c)) work.push_back({ch, c, std::move(in_ch)});
      } else if (ch.contains(h)) {
        if (!(ch == h)) work.push_back({ch, h, std::move(in_ch)});
      } else {
        work.push_back({ch, std::nullopt, std::move(in_ch)});
      }
    }
    work.push_back({c, std::nullopt, std::move(in_c)});
  }
  return out;
}

}  // namespace hopspan
