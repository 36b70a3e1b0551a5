#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace hopspan;

namespace {

IntersectionGraph make(std::size_t n, std::vector<Edge> e) { return IntersectionGraph::from_edges(n, e); }

IntersectionGraph clique(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make(n, e);
}

void expect_sound(const IntersectionGraph& g, const Spanner& s) {
  for (auto [a, b] : s.edges) ASSERT_TRUE(g.has_edge(a, b));
  EXPECT_TRUE(std::is_sorted(s.edges.begin(), s.edges.end()));
  if (g.size() <= oracle::kMaxN) {
    EXPECT_LE(oracle::max_required_hops(g.size(), g.edges(), s.edges, s.stretch), s.stretch);
  } else {
    EXPECT_TRUE(verify_hop_spanner(g, s, s.stretch).ok);
  }
}

}  // namespace

TEST(Alpha, Values) {
  EXPECT_EQ(alpha(0, 10), 5);
  EXPECT_EQ(alpha(0, 11), 6);
  EXPECT_EQ(alpha(1, 65536), 16);
  EXPECT_EQ(alpha(1, 65537), 17);
  EXPECT_EQ(alpha(2, 65536), 4);
  EXPECT_EQ(alpha(2, 1), 0);
  for (std::int64_t n : {2, 3, 5, 16, 17, 1000, 65537, 1 << 20}) EXPECT_EQ(alpha(2, n), oracle::log_star(n)) << n;
  EXPECT_EQ(alpha(3, 65536), 3);  // 65536 -> 4 -> 2 -> 1
  EXPECT_THROW(alpha(-1, 4), InputError);
  EXPECT_THROW(alpha(1, 0), InputError);
}

TEST(StretchBound, Tables) {
  const std::int64_t string_t[] = {3, 18, 93, 468};
  const std::int64_t fat_t[] = {3, 12, 39};
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(stretch_bound(Family::string, k), string_t[k - 1]);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(stretch_bound(Family::fat, k), fat_t[k - 1]);
  EXPECT_THROW(stretch_bound(Family::string, 0), InputError);
}

TEST(StringI, EmptyAndClique) {
  EXPECT_TRUE(string_spanner_3hop(make(0, {})).edges.empty());
  EXPECT_TRUE(string_spanner_3hop(make(5, {})).edges.empty());
  const auto g = clique(60);
  const auto s = string_spanner_3hop(g);
  EXPECT_EQ(s.stretch, 3);
  EXPECT_EQ(s.construction, "string-I");
  expect_sound(g, s);
  EXPECT_LT(s.edges.size(), g.edge_count());
}

TEST(StringI, RandomPolylines) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto objs = generate_instance("polylines", 500, {}, seed);
    const auto g = build_intersection_graph(objs);
    expect_sound(g, string_spanner_3hop(g));
  }
}

TEST(StringI, RandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 30 + 10 * (seed % 10);
    const auto g = make(n, oracle::random_graph(n, 0.02 + 0.03 * static_cast<double>(seed % 5), seed));
    expect_sound(g, string_spanner_3hop(g));
  }
}

TEST(StringII, StarsJoinedThroughMiddle) {
  // two big stars (centers 0 and 20) joined by the path 1 - 40 - 21
  std::vector<Edge> e;
  for (Vertex i = 1; i < 20; ++i) e.emplace_back(0, i);
  for (Vertex i = 21; i < 40; ++i) e.emplace_back(20, i);
  e.emplace_back(1, 40);
  e.emplace_back(21, 40);
  const auto g = make(41, e);
  const auto s = string_spanner_7hop(g);
  EXPECT_EQ(s.stretch, 7);
  expect_sound(g, s);
  EXPECT_TRUE(std::binary_search(s.edges.begin(), s.edges.end(), Edge{1, 40}));
  EXPECT_TRUE(std::binary_search(s.edges.begin(), s.edges.end(), Edge{21, 40}));
}

TEST(StringII, RandomInputs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = build_intersection_graph(generate_instance("polylines", 500, {}, seed));
    expect_sound(g, string_spanner_7hop(g));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = make(200, oracle::random_graph(200, 0.05, seed));
    expect_sound(g, string_spanner_7hop(g));
  }
  expect_sound(clique(100), string_spanner_7hop(clique(100)));
}

TEST(StringIII, DefaultParameters) {
  const auto g = build_intersection_graph(generate_instance("polylines", 400, {}, 3));
  const auto s = string_spanner_tk(g, 2);
  EXPECT_EQ(s.stretch, 18);
  EXPECT_EQ(s.construction, "string-III");
  expect_sound(g, s);
  EXPECT_EQ(string_spanner_tk(g, 1).stretch, 3);
}

TEST(StringIII, FullRecursionWithSmallParameters) {
  StringOptions opt;
  opt.delta = 3;
  opt.r = 30;
  for (int k : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = build_intersection_graph(generate_instance("polylines", 300, {}, seed));
      const auto s = string_spanner_tk(g, k, opt);
      EXPECT_EQ(s.stretch, stretch_bound(Family::string, k));
      expect_sound(g, s);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto g = make(250, oracle::random_graph(250, 0.02, seed));
      expect_sound(g, string_spanner_tk(g, k, opt));
    }
  }
}

TEST(StringIII, DisconnectedGraphHasNoCrossEdges) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 50; ++i)
    for (Vertex j = i + 1; j < 50; ++j)
      if ((i + j) % 3 == 0) e.emplace_back(i, j), e.emplace_back(i + 50, j + 50);
  const auto g = make(100, e);
  StringOptions opt;
  opt.delta = 2;
  opt.r = 20;
  const auto s = string_spanner_tk(g, 2, opt);
  expect_sound(g, s);
  for (auto [a, b] : s.edges) EXPECT_EQ(a < 50, b < 50);
}

TEST(StringIII, SmallInputEmitsAllEdges) {
  const auto g = clique(6);
  EXPECT_EQ(string_spanner_tk(g, 2).edges, g.edges());
}

TEST(Spanners, Deterministic) {
  const auto g = build_intersection_graph(generate_instance("polylines", 300, {}, 9));
  EXPECT_EQ(string_spanner_3hop(g).edges, string_spanner_3hop(g).edges);
  EXPECT_EQ(string_spanner_7hop(g).edges, string_spanner_7hop(g).edges);
  EXPECT_EQ(string_spanner_tk(g, 2).edges, string_spanner_tk(g, 2).edges);
}
