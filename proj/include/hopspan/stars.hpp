#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "graph.hpp"

namespace hopspan {

inline constexpr std::int32_t kNone = -1;

struct Star {
  Vertex center = 0;
  std::vector<Vertex> members;  // sorted, includes the center
};

struct StarSystem {
  std::vector<Star> stars;
  std::vector<std::int32_t> star_of;   // per vertex, kNone if in no star
  std::vector<std::int32_t> assigned;  // per vertex, filled by one_star mode

  explicit StarSystem(std::size_t n = 0) : star_of(n, kNone), assigned(n, kNone) {}

  std::int32_t add(Vertex center, std::vector<Vertex> members) {
    std::sort(members.begin(), members.end());
    const auto id = static_cast<std::int32_t>(stars.size());
    for (Vertex v : members) {
      if (star_of[v] != kNone) throw StructuralError("vertex placed in two stars");
      star_of[v] = id;
    }
    stars.push_back({center, std::move(members)});
    return id;
  }

  // Star members plus vertices assigned to the star.
  std::vector<std::vector<Vertex>> extended() const {
    std::vector<std::vector<Vertex>> out(stars.size());
    for (std::size_t s = 0; s < stars.size(); ++s) out[s] = stars[s].members;
    for (Vertex v = 0; v < assigned.size(); ++v)
      if (assigned[v] != kNone) out[static_cast<std::size_t>(assigned[v])].push_back(v);
    for (auto& g : out) std::sort(g.begin(), g.end());
    return out;
  }
};

struct Peeling {
  StarSystem stars;
  std::vector<Vertex> remaining;  // vertices of G', ascending
};

// Repeatedly removes a maximum-degree vertex (lowest index on ties) whose
// current degree exceeds delta, together with its current neighborhood.
inline Peeling peel_high_degree_stars(const IntersectionGraph& g, std::size_t delta) {
  const std::size_t n = g.size();
  Peeling out{StarSystem(n), {}};
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::set<std::pair<std::int64_t, Vertex>> queue;  // (-degree, vertex)
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(-static_cast<std::int64_t>(deg[v]), v);
  }
  std::vector<Vertex> batch;
  while (!queue.empty()) {
    const auto [negdeg, c] = *queue.begin();
    if (static_cast<std::size_t>(-negdeg) <= delta) break;
    batch.assign(1, c);
    for (Vertex w : g.neighbors(c))
      if (!removed[w]) batch.push_back(w);
    for (Vertex w : batch) {
      removed[w] = 1;
      queue.erase({-static_cast<std::int64_t>(deg[w]), w});
    }
    for (Vertex w : batch) {
      for (Vertex x : g.neighbors(w)) {
        if (removed[x]) continue;
        queue.erase({-static_cast<std::int64_t>(deg[x]), x});
        --deg[x];
        queue.emplace(-static_cast<std::int64_t>(deg[x]), x);
      }
    }
    out.stars.add(c, batch);
  }
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) out.remaining.push_back(v);
  return out;
}

inline void add_star_edges(const StarSystem& sys, EdgeSink& sink) {
  for (const auto& s : sys.stars)
    for (Vertex v : s.members) sink.add(s.center, v);
}

enum class StarMode { all_stars, one_star };

// all_stars: for every vertex u and every other star holding a neighbor of
// u, an edge to the lowest such neighbor. one_star: every vertex outside the
// stars gets one edge to its lowest star neighbor and is assigned to that
// star.
inline std::vector<Edge> connect_to_stars(const IntersectionGraph& g, StarSystem& sys, StarMode mode) {
  std::vector<Edge> out;
  if (mode == StarMode::all_stars) {
    std::vector<Vertex> seen(sys.stars.size(), static_cast<Vertex>(-1));
    for (Vertex u = 0; u < g.size(); ++u) {
      for (Vertex w : g.neighbors(u)) {
        const auto s = sys.star_of[w];
        if (s == kNone || s == sys.star_of[u] || seen[static_cast<std::size_t>(s)] == u) continue;
        seen[static_cast<std::size_t>(s)] = u;
        out.push_back(normalized(u, w));
      }
    }
  } else {
    for (Vertex u = 0; u < g.size(); ++u) {
      if (sys.star_of[u] != kNone) continue;
      for (Vertex w : g.neighbors(u)) {
        if (sys.star_of[w] == kNone) continue;
        sys.assigned[u] = sys.star_of[w];
        out.push_back(normalized(u, w));
        break;
      }
    }
  }
  return out;
}

struct Quotient {
  IntersectionGraph graph;
  // Keyed by (a << 32 | b) for quotient vertices a < b; the lexicographically
  // least original edge between the two groups.
  std::unordered_map<std::uint64_t, Edge> witness;

  static std::uint64_t key(Vertex a, Vertex b) {
    const Edge e = normalized(a, b);
    return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
  }
  Edge witness_of(Vertex a, Vertex b) const { return witness.at(key(a, b)); }
};

// One vertex per group; groups adjacent iff some original edge joins them.
inline Quotient quotient_union_graph(const IntersectionGraph& g, const std::vector<std::vector<Vertex>>& groups) {
  std::vector<std::int32_t> group_of(g.size(), kNone);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (Vertex v : groups[i]) {
      if (group_of[v] != kNone && group_of[v] != static_cast<std::int32_t>(i))
        throw StructuralError("vertex " + std::to_string(v) + " lies in two extended stars");
      group_of[v] = static_cast<std::int32_t>(i);
    }
  }
  Quotient q;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.size(); ++u) {
    const auto gu = group_of[u];
    if (gu == kNone) continue;
    for (Vertex v : g.neighbors(u)) {
      const auto gv = group_of[v];
      if (v < u || gv == kNone || gv == gu) continue;
      const auto k = Quotient::key(static_cast<Vertex>(gu), static_cast<Vertex>(gv));
      if (q.witness.emplace(k, Edge{u, v}).second)
        edges.push_back(normalized(static_cast<Vertex>(gu), static_cast<Vertex>(gv)));
    }
  }
  q.graph = IntersectionGraph::from_edges(groups.size(), edges);
  return q;
}

}  // namespace hopspan
