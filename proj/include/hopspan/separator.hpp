#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace hopspan {

struct SeparatorResult {
  std::vector<Vertex> V1, V2, X;
};

struct Division {
  std::vector<std::vector<Vertex>> subsets;
  std::vector<Vertex> boundary;
  std::size_t r = 0;

  std::size_t boundary_complexity(std::size_t n) const {
    std::size_t total = 0;
    for (const auto& s : subsets) total += s.size();
    return total - n;
  }
};

namespace detail {

// Longest-processing-time packing of group sizes into two bins. Returns the
// bin (0/1) of each group, in the order given.
inline std::vector<int> lpt_pack(const std::vector<std::size_t>& sizes, std::size_t* max_bin = nullptr) {
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  std::vector<int> bin(sizes.size(), 0);
  std::size_t load[2] = {0, 0};
  for (std::size_t i : order) {
    const int b = load[1] < load[0] ? 1 : 0;
    bin[i] = b;
    load[b] += sizes[i];
  }
  if (max_bin) *max_bin = std::max(load[0], load[1]);
  return bin;
}

inline std::size_t lpt_max(std::vector<std::size_t> sizes) {
  std::size_t m = 0;
  lpt_pack(sizes, &m);
  return m;
}

struct Components {
  std::vector<std::int32_t> comp;  // -1 for excluded vertices
  std::vector<std::vector<Vertex>> members;
};

inline Components components(const IntersectionGraph& g, const std::vector<char>& excluded) {
  Components c;
  c.comp.assign(g.size(), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (excluded[s] || c.comp[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(c.members.size());
    c.members.emplace_back();
    c.comp[s] = id;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      c.members.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (excluded[w] || c.comp[w] >= 0) continue;
        c.comp[w] = id;
        stack.push_back(w);
      }
    }
    std::sort(c.members.back().begin(), c.members.back().end());
  }
  return c;
}

// BFS distances inside one component (vertices outside the component keep -1).
inline std::vector<std::int32_t> bfs_levels(const IntersectionGraph& g, Vertex root, const std::vector<char>& allowed) {
  std::vector<std::int32_t> dist(g.size(), -1);
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex v = queue[i];
    for (Vertex w : g.neighbors(v)) {
      if (!allowed[w] || dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

inline Vertex farthest(const std::vector<std::int32_t>& dist) {
  Vertex best = 0;
  std::int32_t bd = -1;
  for (Vertex v = 0; v < dist.size(); ++v)
    if (dist[v] > bd) {
      bd = dist[v];
      best = v;
    }
  return best;
}

// Articulation points of the component containing root, each with the sizes
// of the pieces its removal creates.
struct CutVertex {
  Vertex v;
  std::vector<std::size_t> pieces;
};

inline std::vector<CutVertex> articulation_points(const IntersectionGraph& g, Vertex root,
                                                  const std::vector<char>& allowed, std::size_t comp_size) {
  const std::size_t n = g.size();
  std::vector<std::int32_t> disc(n, -1), low(n, 0);
  std::vector<std::size_t> sub(n, 1);
  std::vector<std::vector<std::size_t>> pieces(n);
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, root, 0}};
  std::int32_t timer = 0;
  disc[root] = low[root] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      const Vertex w = nb[f.next++];
      if (!allowed[w] || w == f.parent) continue;
      if (disc[w] < 0) {
        disc[w] = low[w] = timer++;
        stack.push_back({w, f.v, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Vertex v = f.v, p = f.parent;
    stack.pop_back();
    if (v == root) break;
    low[p] = std::min(low[p], low[v]);
    sub[p] += sub[v];
    if (low[v] >= disc[p]) pieces[p].push_back(sub[v]);
  }
  std::vector<CutVertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (disc[v] < 0) continue;
    auto& pc = pieces[v];
    if (v == root) {
      if (pc.size() < 2) continue;
    } else {
      if (pc.empty()) continue;
      std::size_t in_sub = 0;
      for (auto s : pc) in_sub += s;
      const std::size_t rest = comp_size - 1 - in_sub;
      if (rest > 0) pc.push_back(rest);
    }
    out.push_back({v, std::move(pc)});
  }
  return out;
}

}  // namespace detail

// Balanced separator: no edge between V1 and V2 and both sides hold at most
// max(1, floor(2n/3)) vertices. X is kept small heuristically.
inline SeparatorResult balanced_separator(const IntersectionGraph& g) {
  const std::size_t n = g.size();
  SeparatorResult res;
  if (n == 0) return res;
  const std::size_t limit = std::max<std::size_t>(1, 2 * n / 3);

  std::vector<char> none(n, 0);
  const auto comps = detail::components(g, none);

  // Final assembly: groups of vertices packed into two bins.
  auto assemble = [&](const std::vector<std::vector<Vertex>>& groups, std::vector<Vertex> x) {
    std::vector<std::size_t> sizes;
    for (const auto& gr : groups) sizes.push_back(gr.size());
    const auto bins = detail::lpt_pack(sizes);
    SeparatorResult r;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& side = bins[i] == 0 ? r.V1 : r.V2;
      side.insert(side.end(), groups[i].begin(), groups[i].end());
    }
    r.X = std::move(x);
    return r;
  };

  std::size_t big = comps.members.size();
  for (std::size_t i = 0; i < comps.members.size(); ++i)
    if (comps.members[i].size() > limit) big = i;

  if (big == comps.members.size()) {
    std::vector<std::size_t> sizes;
    for (const auto& c : comps.members) sizes.push_back(c.size());
    if (detail::lpt_max(sizes) <= limit) res = assemble(comps.members, {});
    else big = 0;  // cannot happen for component sizes <= limit; kept as a guard
  }

  if (big != comps.members.size()) {
    const auto& C = comps.members[big];
    std::vector<std::vector<Vertex>> others;
    std::vector<std::size_t> other_sizes;
    for (std::size_t i = 0; i < comps.members.size(); ++i)
      if (i != big) {
        others.push_back(comps.members[i]);
        other_sizes.push_back(comps.members[i].size());
      }
    auto pack_with = [&](std::initializer_list<std::size_t> extra) {
      auto s = other_sizes;
      s.insert(s.end(), extra.begin(), extra.end());
      return detail::lpt_max(std::move(s));
    };
    std::vector<char> inC(n, 0);
    for (Vertex v : C) inC[v] = 1;

    bool done = false;
    // Stage 1: a single cut vertex.
    {
      auto cuts = detail::articulation_points(g, C.front(), inC, C.size());
      std::optional<Vertex> best;
      std::size_t best_max = limit + 1;
      for (auto& cv : cuts) {
        auto s = other_sizes;
        s.insert(s.end(), cv.pieces.begin(), cv.pieces.end());
        const auto m = detail::lpt_max(std::move(s));
        if (m < best_max) {
          best_max = m;
          best = cv.v;
        }
      }
      if (best) {
        std::vector<char> ex(n, 0);
        for (Vertex v = 0; v < n; ++v) ex[v] = !inC[v];
        ex[*best] = 1;
        auto pieces = detail::components(g, ex);
        auto groups = others;
        for (auto& p : pieces.members) groups.push_back(std::move(p));
        res = assemble(groups, {*best});
        done = true;
      }
    }
    // Stage 2: BFS layering from a pseudo-peripheral vertex.
    if (!done) {
      const Vertex a = detail::farthest(detail::bfs_levels(g, C.front(), inC));
      const Vertex b = detail::farthest(detail::bfs_levels(g, a, inC));
      const auto dist = detail::bfs_levels(g, b, inC);
      std::int32_t depth = 0;
      for (Vertex v : C) depth = std::max(depth, dist[v]);
      std::vector<std::size_t> layer(static_cast<std::size_t>(depth) + 1, 0);
      for (Vertex v : C) ++layer[static_cast<std::size_t>(dist[v])];
      std::vector<std::size_t> prefix(layer.size() + 1, 0);
      for (std::size_t i = 0; i < layer.size(); ++i) prefix[i + 1] = prefix[i] + layer[i];

      std::size_t lo = 0, hi = 0, best_x = C.size() + 1;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        if (layer[i] >= best_x) continue;
        if (pack_with({prefix[i], C.size() - prefix[i + 1]}) <= limit) {
          best_x = layer[i];
          lo = hi = i;
        }
      }
      if (best_x > C.size()) {
        // Fallback: the smallest window of consecutive layers.
        for (std::size_t i = 0; i < layer.size(); ++i) {
          for (std::size_t j = i; j < layer.size(); ++j) {
            const std::size_t xs = prefix[j + 1] - prefix[i];
            if (xs >= best_x) break;
            if (pack_with({prefix[i], C.size() - prefix[j + 1]}) <= limit) {
              best_x = xs;
              lo = i;
              hi = j;
              break;
            }
          }
        }
      }
      std::vector<Vertex> below, above, x;
      for (Vertex v : C) {
        const auto l = static_cast<std::size_t>(dist[v]);
        (l < lo ? below : l > hi ? above : x).push_back(v);
      }
      auto groups = others;
      groups.push_back(std::move(below));
      groups.push_back(std::move(above));
      res = assemble(groups, std::move(x));
    }
  }

  // Refinement: move separator vertices to a side when no crossing edge
  // results and the side stays within the limit.
  std::vector<std::int8_t> side(n, -1);
  for (Vertex v : res.V1) side[v] = 0;
  for (Vertex v : res.V2) side[v] = 1;
  std::size_t cnt[2] = {res.V1.size(), res.V2.size()};
  bool moved = true;
  while (moved) {
    moved = false;
    for (Vertex x : res.X) {
      if (side[x] != -1) continue;
      bool touches[2] = {false, false};
      for (Vertex w : g.neighbors(x))
        if (side[w] >= 0) touches[side[w]] = true;
      int target = -1;
      if (!touches[0] && !touches[1]) target = cnt[1] < cnt[0] ? 1 : 0;
      else if (touches[0] && !touches[1]) target = 0;
      else if (touches[1] && !touches[0]) target = 1;
      if (target < 0 || cnt[target] + 1 > limit) {
        if (target >= 0 && !touches[0] && !touches[1] && cnt[1 - target] + 1 <= limit) target = 1 - target;
        else continue;
      }
      side[x] = static_cast<std::int8_t>(target);
      ++cnt[target];
      moved = true;
    }
  }
  SeparatorResult out;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] == 0) out.V1.push_back(v);
    else if (side[v] == 1) out.V2.push_back(v);
  }
  for (Vertex x : res.X)
    if (side[x] == -1) out.X.push_back(x);
  std::sort(out.X.begin(), out.X.end());
  return out;
}

namespace detail {

inline void divide(const IntersectionGraph& g, std::vector<Vertex> vs, std::size_t r,
                   std::vector<std::vector<Vertex>>& out) {
  if (vs.size() <= r) {
    out.push_back(std::move(vs));
    return;
  }
  const auto sub = induced(g, vs);
  const auto sep = balanced_separator(sub.graph);
  const std::size_t n = vs.size();
  if (sep.V1.size() + sep.X.size() == n || sep.V2.size() + sep.X.size() == n) {
    // No progress: cover by single edges and isolated vertices.
    for (Vertex u = 0; u < sub.graph.size(); ++u) {
      if (sub.graph.degree(u) == 0) out.push_back({sub.to_parent[u]});
      for (Vertex v : sub.graph.neighbors(u))
        if (u < v) out.push_back({sub.to_parent[u], sub.to_parent[v]});
    }
    return;
  }
  for (const auto* part : {&sep.V1, &sep.V2}) {
    std::vector<Vertex> next;
    for (Vertex v : *part) next.push_back(sub.to_parent[v]);
    for (Vertex v : sep.X) next.push_back(sub.to_parent[v]);
    std::sort(next.begin(), next.end());
    divide(g, std::move(next), r, out);
  }
}

}  // namespace detail

// Recursive separation with the separator copied into both sides, stopping
// once a piece has at most r vertices.
inline Division r_division(const IntersectionGraph& g, std::size_t r, std::size_t delta) {
  if (r < 2) throw InputError("r_division requires r >= 2");
  if (g.max_degree() > delta) throw InputError("r_division: maximum degree exceeds delta");
  Division d;
  d.r = r;
  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), 0u);
  if (!all.empty()) detail::divide(g, std::move(all), r, d.subsets);
  std::vector<std::uint32_t> count(g.size(), 0);
  for (const auto& s : d.subsets)
    for (Vertex v : s) ++count[v];
  for (Vertex v = 0; v < g.size(); ++v)
    if (count[v] >= 2) d.boundary.push_back(v);
  return d;
}

}  // namespace hopspan
