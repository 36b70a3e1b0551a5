#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace hopspan {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline Edge normalized(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph with sorted adjacency lists.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;
  explicit IntersectionGraph(std::size_t n) : adj_(n) {}

  // Self-loops are dropped and duplicates merged.
  static IntersectionGraph from_edges(std::size_t n, std::span<const Edge> edges) {
    IntersectionGraph g(n);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      if (u >= n || v >= n) throw InputError("edge endpoint out of range");
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    g.finalize();
    return g;
  }

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return m_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return d;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
  }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  void finalize() {
    m_ = 0;
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      m_ += a.size();
    }
    m_ /= 2;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

// Induced subgraph with local ids 0..k-1; to_parent maps back.
struct Subgraph {
  IntersectionGraph graph;
  std::vector<Vertex> to_parent;
};

inline Subgraph induced(const IntersectionGraph& g, std::span<const Vertex> vertices) {
  Subgraph s;
  s.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(s.to_parent.begin(), s.to_parent.end());
  s.to_parent.erase(std::unique(s.to_parent.begin(), s.to_parent.end()), s.to_parent.end());
  std::vector<Edge> edges;
  for (Vertex i = 0; i < s.to_parent.size(); ++i) {
    for (Vertex w : g.neighbors(s.to_parent[i])) {
      auto it = std::lower_bound(s.to_parent.begin(), s.to_parent.end(), w);
      if (it != s.to_parent.end() && *it == w) {
        const auto j = static_cast<Vertex>(it - s.to_parent.begin());
        if (i < j) edges.emplace_back(i, j);
      }
    }
  }
  s.graph = IntersectionGraph::from_edges(s.to_parent.size(), edges);
  return s;
}

// Sweep over bounding boxes sorted by their lower x coordinate; exact
// predicate on every candidate pair.
inline IntersectionGraph build_intersection_graph(std::span<const GeometricObject> objects) {
  const std::size_t n = objects.size();
  if (n == 0) return IntersectionGraph(0);
  const int d = objects.front().dimension();
  for (const auto& o : objects)
    if (o.dimension() != d) throw InputError("mixed dimensions in one instance");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    const double la = objects[a].lo()[0], lb = objects[b].lo()[0];
    return la != lb ? la < lb : a < b;
  });
  std::vector<Edge> edges;
  std::vector<Vertex> active;
  for (Vertex v : order) {
    const double x = objects[v].lo()[0];
    std::erase_if(active, [&](Vertex a) { return objects[a].hi()[0] < x; });
    for (Vertex a : active)
      if (intersects(objects[a], objects[v])) edges.push_back(normalized(a, v));
    active.push_back(v);
  }
  return IntersectionGraph::from_edges(n, edges);
}

// O(n^2) reference construction.
inline IntersectionGraph build_intersection_graph_naive(std::span<const GeometricObject> objects) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < objects.size(); ++u)
    for (Vertex v = u + 1; v < objects.size(); ++v)
      if (intersects(objects[u], objects[v])) edges.emplace_back(u, v);
  return IntersectionGraph::from_edges(objects.size(), edges);
}

struct Spanner {
  std::vector<Edge> edges;  // normalized, sorted, unique
  int stretch = 1;
  std::string construction;
  std::map<std::string, std::int64_t> parameters;

  void canonicalize() {
    for (auto& e : edges) e = normalized(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
};

// Collects edges expressed in local ids and translates them through a
// chain of id maps into the caller's id space.
class EdgeSink {
 public:
  EdgeSink() = default;
  EdgeSink(EdgeSink* parent, std::vector<Vertex> to_parent)
      : parent_(parent), to_parent_(std::move(to_parent)) {}

  void add(Vertex u, Vertex v) {
    if (u == v) return;
    if (parent_) parent_->add(to_parent_[u], to_parent_[v]);
    else edges_.push_back(normalized(u, v));
  }

  std::vector<Edge> take() {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    return std::move(edges_);
  }

 private:
  EdgeSink* parent_ = nullptr;
  std::vector<Vertex> to_parent_;
  std::vector<Edge> edges_;
};

inline void add_all_edges(const IntersectionGraph& g, EdgeSink& sink) {
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) sink.add(u, v);
}

inline int ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

}  // namespace hopspan
