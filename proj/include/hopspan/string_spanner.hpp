#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "separator.hpp"
#include "stars.hpp"

namespace hopspan {

enum class Family { string, fat };

// Inverse Ackermann hierarchy: alpha_0(n) = ceil(n/2), alpha_1(n) =
// ceil(log2 n), alpha_k(n) = number of alpha_{k-1} iterations to reach 1.
inline std::int64_t alpha(int k, std::int64_t n) {
  if (k < 0 || n < 1) throw InputError("alpha: requires k >= 0 and n >= 1");
  if (k == 0) return (n + 1) / 2;
  if (k == 1) return ceil_log2(static_cast<std::uint64_t>(n));
  std::int64_t count = 0;
  while (n > 1) {
    n = alpha(k - 1, n);
    ++count;
  }
  return count;
}

// t_1 = 3; string: t_k = 5 t_{k-1} + 3; fat: t_k = 3 t_{k-1} + 3.
inline std::int64_t stretch_bound(Family f, int k) {
  if (k < 1) throw InputError("stretch_bound: k must be at least 1");
  std::int64_t t = 3;
  for (int i = 2; i <= k; ++i) t = (f == Family::string ? 5 : 3) * t + 3;
  return t;
}

inline constexpr std::size_t kBaseCaseSize = 8;

// log2 rounded up, with 1 in place of 0.
inline std::size_t log_param(std::size_t n) { return static_cast<std::size_t>(std::max(1, ceil_log2(n))); }

struct StringOptions {
  std::size_t base_case = kBaseCaseSize;
  std::size_t c0 = 4;
  // Overrides of the level-k peeling threshold and division size; used to
  // exercise the full recursion on small inputs.
  std::optional<std::size_t> delta;
  std::optional<std::size_t> r;
};

namespace detail {

inline void string_3hop(const IntersectionGraph& g, EdgeSink& sink, std::size_t base) {
  const std::size_t n = g.size();
  if (n <= base) {
    add_all_edges(g, sink);
    return;
  }
  const std::size_t L = log_param(n);
  const std::size_t delta = std::max<std::size_t>(1, n / (L * L));
  auto peel = peel_high_degree_stars(g, delta);
  add_star_edges(peel.stars, sink);
  for (auto [u, v] : connect_to_stars(g, peel.stars, StarMode::all_stars)) sink.add(u, v);
  if (peel.remaining.empty()) return;

  auto rest = induced(g, peel.remaining);
  EdgeSink rest_sink(&sink, rest.to_parent);
  const auto sep = balanced_separator(rest.graph);
  const std::size_t m = rest.graph.size();
  if (sep.V1.size() + sep.X.size() == m || sep.V2.size() + sep.X.size() == m) {
    add_all_edges(rest.graph, rest_sink);
    return;
  }
  for (const auto* part : {&sep.V1, &sep.V2}) {
    std::vector<Vertex> vs(*part);
    vs.insert(vs.end(), sep.X.begin(), sep.X.end());
    auto piece = induced(rest.graph, vs);
    EdgeSink piece_sink(&rest_sink, piece.to_parent);
    string_3hop(piece.graph, piece_sink, base);
  }
}

// For each pair of stars joined by a path of two edges, one such path; the
// middle vertex is scanned in ascending order and the endpoints are its
// lowest neighbors in the two stars.
inline void star_pair_paths(const IntersectionGraph& g, const StarSystem& sys, EdgeSink& sink) {
  const std::size_t s = sys.stars.size();
  if (s < 2) return;
  std::vector<char> done(s * s, 0);
  std::vector<std::pair<std::int32_t, Vertex>> hits;
  std::vector<Vertex> seen(s, static_cast<Vertex>(-1));
  for (Vertex x = 0; x < g.size(); ++x) {
    hits.clear();
    for (Vertex w : g.neighbors(x)) {
      const auto st = sys.star_of[w];
      if (st == kNone || seen[static_cast<std::size_t>(st)] == x) continue;
      seen[static_cast<std::size_t>(st)] = x;
      hits.emplace_back(st, w);
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
      for (std::size_t j = i + 1; j < hits.size(); ++j) {
        auto a = static_cast<std::size_t>(hits[i].first), b = static_cast<std::size_t>(hits[j].first);
        if (a > b) std::swap(a, b);
        if (done[a * s + b]) continue;
        done[a * s + b] = 1;
        sink.add(x, hits[i].second);
        sink.add(x, hits[j].second);
      }
    }
  }
}

inline void string_7hop(const IntersectionGraph& g, EdgeSink& sink, std::size_t base) {
  const std::size_t n = g.size();
  if (n <= base) {
    add_all_edges(g, sink);
    return;
  }
  const auto delta = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto r = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.9))),
                                         2, n);
  auto peel = peel_high_degree_stars(g, delta);
  add_star_edges(peel.stars, sink);
  for (auto [u, v] : connect_to_stars(g, peel.stars, StarMode::one_star)) sink.add(u, v);
  star_pair_paths(g, peel.stars, sink);
  if (peel.remaining.empty()) return;

  auto rest = induced(g, peel.remaining);
  EdgeSink rest_sink(&sink, rest.to_parent);
  const auto div = r_division(rest.graph, r, delta);
  for (const auto& subset : div.subsets) {
    auto piece = induced(rest.graph, subset);
    EdgeSink piece_sink(&rest_sink, piece.to_parent);
    string_7hop(piece.graph, piece_sink, base);
  }
}

inline void string_tk(const IntersectionGraph& g, int k, EdgeSink& sink, const StringOptions& opt) {
  if (k < 2) {
    string_3hop(g, sink, opt.base_case);
    return;
  }
  const std::size_t n = g.size();
  if (n <= opt.base_case) {
    add_all_edges(g, sink);
    return;
  }
  const std::size_t L = log_param(n);
  std::size_t delta = k == 2 ? L * L * L : opt.c0 * static_cast<std::size_t>(std::max<std::int64_t>(1, alpha(k - 1, static_cast<std::int64_t>(n))));
  std::size_t r = std::clamp<std::size_t>(delta * delta * delta, 2, n);
  if (opt.delta) delta = *opt.delta;
  if (opt.r) r = std::clamp<std::size_t>(*opt.r, 2, n);
  if (delta >= r || r >= n) {
    // The division cannot shrink the instance at this size; the level-1
    // construction is the base of the recursion.
    string_3hop(g, sink, opt.base_case);
    return;
  }

  auto peel = peel_high_degree_stars(g, delta);
  add_star_edges(peel.stars, sink);
  auto& sys = peel.stars;

  if (!peel.remaining.empty()) {
    auto rest = induced(g, peel.remaining);
    EdgeSink rest_sink(&sink, rest.to_parent);
    const auto div = r_division(rest.graph, r, delta);
    std::vector<char> in_b(rest.graph.size(), 0);
    for (Vertex b : div.boundary) in_b[b] = 1;
    for (const auto& subset : div.subsets) {
      std::vector<Vertex> vs;
      for (Vertex v : subset)
        if (!in_b[v]) vs.push_back(v);
      if (vs.size() < 2) continue;
      auto piece = induced(rest.graph, vs);
      EdgeSink piece_sink(&rest_sink, piece.to_parent);
      string_tk(piece.graph, k, piece_sink, opt);
    }
    for (Vertex b : div.boundary) sys.add(rest.to_parent[b], {rest.to_parent[b]});
  }
  for (auto [u, v] : connect_to_stars(g, sys, StarMode::one_star)) sink.add(u, v);

  const auto quotient = quotient_union_graph(g, sys.extended());
  EdgeSink h_sink;
  string_tk(quotient.graph, k - 1, h_sink, opt);
  for (auto [a, b] : h_sink.take()) {
    const Edge w = quotient.witness_of(a, b);
    sink.add(w.first, w.second);
  }
}

}  // namespace detail

inline Spanner string_spanner_3hop(const IntersectionGraph& g, const StringOptions& opt = {}) {
  EdgeSink sink;
  detail::string_3hop(g, sink, opt.base_case);
  Spanner s;
  s.edges = sink.take();
  s.stretch = 3;
  s.construction = "string-I";
  const std::size_t L = log_param(g.size());
  s.parameters = {{"delta", static_cast<std::int64_t>(std::max<std::size_t>(1, g.size() / (L * L)))},
                  {"n0", static_cast<std::int64_t>(opt.base_case)}};
  return s;
}

inline Spanner string_spanner_7hop(const IntersectionGraph& g, const StringOptions& opt = {}) {
  EdgeSink sink;
  detail::string_7hop(g, sink, opt.base_case);
  Spanner s;
  s.edges = sink.take();
  s.stretch = 7;
  s.construction = "string-II";
  const double n = static_cast<double>(std::max<std::size_t>(g.size(), 1));
  s.parameters = {{"delta", static_cast<std::int64_t>(std::ceil(std::sqrt(n)))},
                  {"r", static_cast<std::int64_t>(std::clamp(std::ceil(std::pow(n, 0.9)), 2.0, std::max(2.0, n)))},
                  {"n0", static_cast<std::int64_t>(opt.base_case)}};
  return s;
}

inline Spanner string_spanner_tk(const IntersectionGraph& g, int k, const StringOptions& opt = {}) {
  if (k < 2) {
    auto s = string_spanner_3hop(g, opt);
    s.parameters["k"] = k;
    return s;
  }
  EdgeSink sink;
  detail::string_tk(g, k, sink, opt);
  Spanner s;
  s.edges = sink.take();
  s.stretch = static_cast<int>(stretch_bound(Family::string, k));
  s.construction = "string-III";
  const std::size_t n = std::max<std::size_t>(g.size(), 1);
  const std::size_t L = log_param(n);
  const std::size_t delta = opt.delta.value_or(
      k == 2 ? L * L * L : opt.c0 * static_cast<std::size_t>(std::max<std::int64_t>(1, alpha(k - 1, static_cast<std::int64_t>(n)))));
  s.parameters = {{"k", k},
                  {"delta", static_cast<std::int64_t>(delta)},
                  {"r", static_cast<std::int64_t>(std::clamp<std::size_t>(opt.r.value_or(delta * delta * delta), 2, std::max<std::size_t>(n, 2)))},
                  {"c0", static_cast<std::int64_t>(opt.c0)},
                  {"n0", static_cast<std::int64_t>(opt.base_case)}};
  return s;
}

}  // namespace hopspan
