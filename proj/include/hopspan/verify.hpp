#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"

namespace hopspan {

enum class VerifyMode { automatic, exact, sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::automatic;
  std::size_t exact_limit = 3000;  // automatic mode samples above this n
  double sample_fraction = 0.1;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  bool ok = true;
  bool sampled = false;
  std::optional<Edge> worst_edge;
  int worst_hops = 0;  // t + 1 stands for "more than t"
  // histogram[h] = number of checked edges needing h hops; index t + 1
  // counts edges with no path of at most t hops.
  std::vector<std::size_t> histogram;
  std::size_t checked_edges = 0;
};

inline std::vector<Edge> sample_edges(const IntersectionGraph& g, double fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> out;
  const auto threshold = static_cast<std::uint64_t>(fraction * 18446744073709551616.0);
  for (const Edge& e : g.edges())
    if (fraction >= 1.0 || rng() < threshold) out.push_back(e);
  return out;
}

inline VerifyReport verify_hop_spanner(const IntersectionGraph& g, std::span<const Edge> spanner_edges, int t,
                                       const VerifyOptions& opt = {}) {
  if (t < 1) throw InputError("hop bound must be at least 1");
  const std::size_t n = g.size();
  std::vector<Edge> s_edges;
  s_edges.reserve(spanner_edges.size());
  for (auto [u, v] : spanner_edges) {
    if (u >= n || v >= n || u == v || !g.has_edge(u, v))
      throw StructuralError("spanner edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") is not an edge of the graph");
    s_edges.emplace_back(u, v);
  }
  const auto s = IntersectionGraph::from_edges(n, s_edges);

  VerifyReport rep;
  rep.histogram.assign(static_cast<std::size_t>(t) + 2, 0);
  rep.sampled = opt.mode == VerifyMode::sampled || (opt.mode == VerifyMode::automatic && n > opt.exact_limit);
  const auto targets_list = rep.sampled ? sample_edges(g, opt.sample_fraction, opt.seed) : g.edges();

  std::vector<int> dist(n, -1);
  std::vector<Vertex> touched, frontier, next;
  std::size_t pos = 0;
  while (pos < targets_list.size()) {
    const Vertex src = targets_list[pos].first;
    std::size_t end = pos;
    while (end < targets_list.size() && targets_list[end].first == src) ++end;

    std::size_t remaining = end - pos;
    auto is_target = [&](Vertex v) {
      return std::binary_search(targets_list.begin() + static_cast<std::ptrdiff_t>(pos),
                                targets_list.begin() + static_cast<std::ptrdiff_t>(end), Edge{src, v});
    };
    dist[src] = 0;
    touched.assign(1, src);
    frontier.assign(1, src);
    for (int depth = 1; depth <= t && remaining > 0 && !frontier.empty(); ++depth) {
      next.clear();
      for (Vertex x : frontier) {
        for (Vertex y : s.neighbors(x)) {
          if (dist[y] >= 0) continue;
          dist[y] = depth;
          touched.push_back(y);
          next.push_back(y);
          if (y > src && is_target(y)) --remaining;
        }
      }
      std::swap(frontier, next);
    }
    for (std::size_t i = pos; i < end; ++i) {
      const Vertex v = targets_list[i].second;
      const int h = dist[v] < 0 ? t + 1 : dist[v];
      ++rep.histogram[static_cast<std::size_t>(h)];
      if (h > rep.worst_hops) {
        rep.worst_hops = h;
        rep.worst_edge = targets_list[i];
      }
      if (h > t) rep.ok = false;
    }
    rep.checked_edges += end - pos;
    for (Vertex v : touched) dist[v] = -1;
    pos = end;
  }
  return rep;
}

inline VerifyReport verify_hop_spanner(const IntersectionGraph& g, const Spanner& s, int t,
                                       const VerifyOptions& opt = {}) {
  return verify_hop_spanner(g, std::span<const Edge>(s.edges), t, opt);
}

}  // namespace hopspan
