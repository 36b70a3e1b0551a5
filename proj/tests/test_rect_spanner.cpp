#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

using namespace hopspan;

namespace {

void expect_sound(const std::vector<GeometricObject>& objs, const Spanner& s) {
  const auto g = oracle::graph_edges(objs);
  const std::set<Edge> gs(g.begin(), g.end());
  for (const auto& e : s.edges) ASSERT_TRUE(gs.count(e)) << e.first << "-" << e.second;
  EXPECT_LE(oracle::max_required_hops(objs.size(), g, s.edges, 3), 3);
}

}  // namespace

TEST(CoverIntervals, WorkedExample) {
  const std::vector<Interval> H{{0, 4}, {2, 7}, {5, 6}, {6, 10}};
  const auto c = cover_intervals(H).intervals;
  ASSERT_EQ(c.size(), 4u);
  EXPECT_TRUE(c[0].point);
  EXPECT_EQ(c[0].left, 0);
  EXPECT_EQ(c[0].cover, 0u);
  const double l[] = {0, 4, 7}, r[] = {4, 7, 10};
  const std::size_t cov[] = {0, 1, 3};
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(c[i + 1].point);
    EXPECT_EQ(c[i + 1].left, l[i]);
    EXPECT_EQ(c[i + 1].right, r[i]);
    EXPECT_EQ(c[i + 1].cover, cov[i]);
  }
}

TEST(CoverIntervals, SingleSegmentAndGaps) {
  const std::vector<Interval> one{{2, 5}};
  const auto c = cover_intervals(one).intervals;
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c[0].point);
  EXPECT_EQ(c[1].left, 2);
  EXPECT_EQ(c[1].right, 5);

  const std::vector<Interval> two{{0, 1}, {0.5, 2}, {5, 6}};
  const auto d = cover_intervals(two).intervals;
  ASSERT_EQ(d.size(), 5u);
  EXPECT_TRUE(d[3].point);
  EXPECT_EQ(d[3].left, 5);
  EXPECT_EQ(d[4].cover, 2u);

  // ties on the right end go to the lower index
  const std::vector<Interval> tie{{0, 3}, {0, 3}};
  EXPECT_EQ(cover_intervals(tie).intervals[1].cover, 0u);
}

TEST(CoverIntervals, RunsCoverEverySegment) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0, 100);
  for (int it = 0; it < 50; ++it) {
    std::vector<Interval> H;
    for (int i = 0; i < 60; ++i) {
      const double a = U(rng);
      H.push_back({a, a + U(rng) / 10});
    }
    const auto c = cover_intervals(H).intervals;
    for (std::size_t k = 1; k < c.size(); ++k) {
      if (c[k].point) continue;
      EXPECT_LT(c[k].left, c[k].right);
      EXPECT_LE(H[c[k].cover].lo, c[k].left);
      EXPECT_EQ(H[c[k].cover].hi, c[k].right);
    }
    for (const auto& h : H)
      for (double x : {h.lo, h.hi, 0.5 * (h.lo + h.hi)}) {
        int hits = 0;
        for (const auto& iv : c) hits += iv.point ? x == iv.left : (iv.left < x && x <= iv.right);
        EXPECT_EQ(hits, 1);
      }
  }
}

TEST(SegLine, HandExamples) {
  const std::vector<GeometricObject> objs{GeometricObject::h_segment(0, 0, 10), GeometricObject::v_line(2),
                                          GeometricObject::v_line(5), GeometricObject::v_line(8)};
  const auto s = seg_line_spanner(objs);
  EXPECT_EQ(s.edges, (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(s.construction, "seg-line");
  const std::vector<GeometricObject> apart{GeometricObject::h_segment(0, 0, 1), GeometricObject::v_line(2)};
  EXPECT_TRUE(seg_line_spanner(apart).edges.empty());
  const std::vector<GeometricObject> wrong{GeometricObject::v_segment(0, 0, 1)};
  EXPECT_THROW(seg_line_spanner(wrong), InputError);
}

TEST(SegLine, RandomLinearSize) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto objs = generate_instance("seg_lines", 400, {}, seed);
    const auto s = seg_line_spanner(objs);
    expect_sound(objs, s);
    EXPECT_LE(s.edges.size(), 6 * objs.size());
  }
}

TEST(Seg, CrossingPairAndGrid) {
  const std::vector<GeometricObject> pair{GeometricObject::h_segment(0, -1, 1), GeometricObject::v_segment(0, -1, 1)};
  EXPECT_EQ(seg_spanner(pair).edges, (std::vector<Edge>{{0, 1}}));

  std::vector<GeometricObject> grid;
  for (int i = 0; i < 30; ++i) grid.push_back(GeometricObject::h_segment(i, 0, 29));
  for (int i = 0; i < 30; ++i) grid.push_back(GeometricObject::v_segment(i, 0, 29));
  const auto s = seg_spanner(grid);
  expect_sound(grid, s);
  EXPECT_LT(s.edges.size(), 900u);
}

TEST(Seg, CollinearOverlaps) {
  const std::vector<GeometricObject> objs{GeometricObject::h_segment(1, 0, 2), GeometricObject::h_segment(1, 2, 3),
                                          GeometricObject::h_segment(1, 4, 5), GeometricObject::v_segment(7, 0, 1),
                                          GeometricObject::v_segment(7, 1, 3), GeometricObject::v_line(4.5),
                                          GeometricObject::v_line(4.5)};
  expect_sound(objs, seg_spanner(objs));
}

TEST(Seg, RandomSegments) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const char* fam : {"hv_segments", "seg_lines"}) {
      const auto objs = generate_instance(fam, 400, {}, seed);
      expect_sound(objs, seg_spanner(objs));
    }
  }
}

TEST(Rect, NestedAndPlus) {
  const std::vector<GeometricObject> nested{GeometricObject::axis_rect(0, 0, 10, 10), GeometricObject::axis_rect(2, 2, 3, 3)};
  EXPECT_EQ(rect_spanner(nested).edges, (std::vector<Edge>{{0, 1}}));
  const std::vector<GeometricObject> plus{GeometricObject::axis_rect(0, 4, 10, 6), GeometricObject::axis_rect(4, 0, 6, 10)};
  RectDiagnostics dg;
  EXPECT_EQ(rect_spanner(plus, &dg).edges, (std::vector<Edge>{{0, 1}}));
  EXPECT_GT(dg.side_edges, 0u);
}

TEST(Rect, RandomFamilies) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const char* fam : {"rects", "nested_rects", "squares"}) {
      const auto objs = generate_instance(fam, 400, {}, seed);
      const auto s = rect_spanner(objs);
      EXPECT_EQ(s.stretch, 3);
      expect_sound(objs, s);
    }
  }
}

TEST(Rect, RejectsNonRectangles) {
  const std::vector<GeometricObject> objs{GeometricObject::disk(0, 0, 1)};
  EXPECT_THROW(rect_spanner(objs), InputError);
}
