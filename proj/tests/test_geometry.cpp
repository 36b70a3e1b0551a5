#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

using namespace hopspan;

TEST(Intersects, SpecPairs) {
  EXPECT_TRUE(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::disk(1.5, 0, 1)));
  EXPECT_FALSE(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::disk(2.5, 0, 1)));
  EXPECT_TRUE(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::disk(2, 0, 1)));  // touching
  EXPECT_TRUE(intersects(GeometricObject::axis_rect(0, 0, 1, 1), GeometricObject::axis_rect(1, 0, 2, 1)));
  EXPECT_TRUE(intersects(GeometricObject::polyline({{0, 0}, {1, 1}}), GeometricObject::polyline({{0, 1}, {1, 0}})));
  EXPECT_FALSE(intersects(GeometricObject::polyline({{0, 0}, {1, 0}}), GeometricObject::polyline({{0, 1}, {1, 1}})));
}

TEST(Intersects, MixedKinds) {
  const auto line = GeometricObject::v_line(2);
  EXPECT_TRUE(intersects(line, GeometricObject::h_segment(5, 1, 2)));
  EXPECT_FALSE(intersects(line, GeometricObject::h_segment(5, 2.5, 3)));
  EXPECT_TRUE(intersects(line, GeometricObject::v_line(2)));
  EXPECT_FALSE(intersects(line, GeometricObject::v_line(3)));
  EXPECT_TRUE(intersects(GeometricObject::h_segment(0, -1, 1), GeometricObject::v_segment(0, -1, 1)));
  EXPECT_FALSE(intersects(GeometricObject::h_segment(0, -1, 1), GeometricObject::v_segment(0, 0.5, 1)));
  EXPECT_TRUE(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::axis_rect(0.7, 0.7, 2, 2)));
  EXPECT_FALSE(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::axis_rect(0.75, 0.75, 2, 2)));
  // polyline through a disk without a vertex inside
  EXPECT_TRUE(intersects(GeometricObject::polyline({{-3, 0}, {3, 0}}), GeometricObject::disk(0, 0.5, 1)));
  EXPECT_TRUE(intersects(GeometricObject::polyline({{-3, 0.5}, {3, 0.5}}), GeometricObject::axis_rect(0, 0, 1, 1)));
  const auto u = GeometricObject::union_of({GeometricObject::axis_rect(0, 0, 1, 1), GeometricObject::axis_rect(2, 2, 3, 3)});
  EXPECT_TRUE(intersects(u, GeometricObject::disk(3.5, 3.5, 0.8)));
  EXPECT_FALSE(intersects(u, GeometricObject::disk(1.5, 1.5, 0.2)));
}

TEST(Intersects, DimensionMismatchThrows) {
  EXPECT_THROW(intersects(GeometricObject::disk(0, 0, 1), GeometricObject::ball({0, 0, 0}, 1)), InputError);
}

TEST(Intersects, AgreesWithOracleOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 4);
  auto random_object = [&](int kind) -> GeometricObject {
    const double x = U(rng), y = U(rng);
    switch (kind) {
      case 0: return GeometricObject::disk(x, y, 0.1 + U(rng) / 4);
      case 1: return GeometricObject::axis_rect(x, y, x + U(rng) / 3, y + U(rng) / 3);
      case 2: return GeometricObject::h_segment(y, x, x + U(rng) / 2);
      case 3: return GeometricObject::v_segment(x, y, y + U(rng) / 2);
      case 4: return GeometricObject::v_line(x);
      default: return GeometricObject::polyline({{x, y}, {U(rng), U(rng)}, {U(rng), U(rng)}});
    }
  };
  int disagreements = 0;
  for (int it = 0; it < 20000; ++it) {
    const int ka = static_cast<int>(rng() % 6), kb = static_cast<int>(rng() % 6);
    if ((ka == 5) != (kb == 5)) continue;  // the oracle has no polyline-vs-area test
    const auto a = random_object(ka), b = random_object(kb);
    if (intersects(a, b) != oracle::intersects(a, b)) ++disagreements;
    EXPECT_EQ(intersects(a, b), intersects(b, a));
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(SideLength, Examples) {
  EXPECT_DOUBLE_EQ(side_length(GeometricObject::disk(3, 3, 1)), 2);
  EXPECT_DOUBLE_EQ(side_length(GeometricObject::axis_rect(0, 0, 1, 3)), 3);
  EXPECT_DOUBLE_EQ(side_length(GeometricObject::union_of({GeometricObject::axis_rect(0, 0, 1, 1),
                                                         GeometricObject::axis_rect(2, 2, 3, 3)})),
                   3);
}

TEST(Alignment, Examples) {
  EXPECT_TRUE(is_aligned(GeometricObject::axis_rect(0.1, 0.1, 0.35, 0.35), 10));
  const double eps = 1e-9;
  EXPECT_FALSE(is_aligned(GeometricObject::h_segment(0.5, 0.5 - eps, 0.5 + eps), 10));
  EXPECT_THROW(is_aligned(GeometricObject::disk(0.95, 0.5, 0.1), 10), InputError);
}

TEST(Alignment, MatchesLevelScan) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0, 1);
  for (int it = 0; it < 2000; ++it) {
    const double s = std::pow(10.0, -1 - 4 * U(rng));
    const double x = U(rng) * (1 - s), y = U(rng) * (1 - s);
    const auto u = GeometricObject::axis_rect(x, y, x + s, y + s * U(rng));
    for (double C : {1.0, 2.0, 10.0}) EXPECT_EQ(is_aligned(u, C), oracle::aligned_by_scan(u, C));
  }
}

TEST(Alignment, SmallestCellIsMinimal) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0, 1);
  for (int it = 0; it < 1000; ++it) {
    const auto u = GeometricObject::disk(0.2 + 0.6 * U(rng), 0.2 + 0.6 * U(rng), 0.001 + 0.1 * U(rng));
    const auto c = smallest_containing_cell(u.bounds());
    ASSERT_TRUE(c);
    EXPECT_TRUE(inside_cell(u, *c));
    bool some_child_contains = false;
    for (unsigned m = 0; m < 4; ++m) some_child_contains |= inside_cell(u, c->child(m));
    EXPECT_FALSE(some_child_contains);
  }
}

TEST(Shift, Examples) {
  const auto d = GeometricObject::disk(0.2, 0.2, 0.1);
  const auto s0 = shift_object(d, 0, 5);
  EXPECT_EQ(s0.center(), d.center());
  const auto s1 = shift_object(d, 1, 5);
  EXPECT_NEAR(s1.center()[0], 0.4, 1e-15);
  EXPECT_NEAR(s1.center()[1], 0.4, 1e-15);
  EXPECT_THROW(shift_object(d, 5, 5), InputError);
  EXPECT_THROW(shift_object(d, -1, 5), InputError);
  EXPECT_THROW(shift_object(d, 0, 4), InputError);
}

TEST(Shift, PreservesIntersection) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, 0.8);
  for (int it = 0; it < 2000; ++it) {
    const auto a = GeometricObject::disk(U(rng), U(rng), 0.01 + U(rng) / 8);
    const auto b = GeometricObject::axis_rect(U(rng), U(rng), 0.81 + U(rng) / 8, 0.81 + U(rng) / 8);
    for (int j = 0; j < 5; ++j) EXPECT_EQ(intersects(a, b), intersects(shift_object(a, j, 5), shift_object(b, j, 5)));
  }
}

TEST(Shift, AtMostDMisalignedShifts) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(0, 1);
  const int d = 2, d_star = 5;
  int worst = 0;
  for (int it = 0; it < 1000; ++it) {
    const double s = std::pow(10.0, -1 - 3 * U(rng));
    const double x = U(rng) * (1 - s), y = U(rng) * (1 - s);
    const auto u = GeometricObject::axis_rect(x, y, x + s, y + s);
    int bad = 0;
    for (int j = 0; j < d_star; ++j) bad += !aligned_in_quadtree(shift_object(u, j, d_star), 2 * d_star);
    worst = std::max(worst, bad);
  }
  EXPECT_LE(worst, d);
}

TEST(LeftmostPoint, Examples) {
  EXPECT_EQ(leftmost_point(GeometricObject::disk(0.5, 0.5, 0.1)), (Point{0.4, 0.5}));
  EXPECT_EQ(leftmost_point(GeometricObject::axis_rect(0.2, 0.1, 0.4, 0.3)), (Point{0.2, 0.1}));
  EXPECT_EQ(leftmost_point(GeometricObject::polyline({{0.3, 0.9}, {0.1, 0.2}})), (Point{0.1, 0.2}));
  EXPECT_EQ(leftmost_point(GeometricObject::polyline({{0.1, 0.9}, {0.1, 0.2}})), (Point{0.1, 0.2}));
}

TEST(Depth, Examples) {
  std::vector<GeometricObject> objs{GeometricObject::disk(0, 0, 1), GeometricObject::disk(0, 0, 2),
                                    GeometricObject::disk(0, 0, 3)};
  EXPECT_EQ(depth({0, 0}, objs), 3u);
  EXPECT_EQ(depth({10, 0}, objs), 0u);
  EXPECT_EQ(depth({2, 0}, objs), 2u);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0, 10);
  std::vector<GeometricObject> many;
  for (int i = 0; i < 200; ++i) many.push_back(GeometricObject::disk(U(rng), U(rng), 0.5 + U(rng) / 5));
  for (int i = 0; i < 500; ++i) {
    const Point p{U(rng), U(rng)};
    EXPECT_EQ(depth(p, many), oracle::depth(p, many));
  }
}

TEST(QuadtreeCell, HalfOpenAndNesting) {
  const auto c = QuadtreeCell::containing({0.5, 0.25}, 1);
  EXPECT_EQ(c.index, (std::vector<std::int64_t>{1, 0}));
  EXPECT_TRUE(c.contains(Point{0.5, 0.0}));
  EXPECT_FALSE(c.contains(Point{1.0, 0.0}));
  EXPECT_TRUE(c.parent().contains(c));
  EXPECT_TRUE(c.contains(c.child(3)));
  EXPECT_TRUE(c.child(0).disjoint(c.child(1)));
  EXPECT_EQ(common_ancestor(c.child(0).child(1), c.child(2)), c);
  const QuadtreeCell neg{-1, {0, 0}};
  EXPECT_TRUE(neg.contains(Point{1.5, 1.9}));
  EXPECT_FALSE(neg.contains(Point{2.0, 0.0}));
}

TEST(GeneralizedCell, Membership) {
  const QuadtreeCell outer{0, {0, 0}};
  const GeneralizedCell g{outer, QuadtreeCell{1, {0, 0}}};
  EXPECT_FALSE(g.contains({0.25, 0.25}));
  EXPECT_TRUE(g.contains({0.75, 0.25}));
  EXPECT_TRUE(g.contains({0.5, 0.0}));
}

TEST(UnitCubeMap, RescalesAndKeepsIntersections) {
  std::vector<GeometricObject> objs{GeometricObject::disk(-5, 3, 2), GeometricObject::disk(-2, 3, 1.5),
                                    GeometricObject::disk(10, 10, 1)};
  const auto m = unit_cube_map(objs);
  EXPECT_FALSE(m.identity());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto t = transform(objs[i], m);
    EXPECT_TRUE(inside_unit_cube(t.bounds()));
    for (std::size_t j = 0; j < objs.size(); ++j)
      EXPECT_EQ(intersects(objs[i], objs[j]), intersects(t, transform(objs[j], m)));
  }
  const std::vector<GeometricObject> unit{GeometricObject::disk(0.5, 0.5, 0.1)};
  EXPECT_TRUE(unit_cube_map(unit).identity());
}

TEST(Objects, InvalidInputThrows) {
  EXPECT_THROW(GeometricObject::disk(0, 0, 0), InputError);
  EXPECT_THROW(GeometricObject::axis_rect(1, 0, 0, 1), InputError);
  EXPECT_THROW(GeometricObject::polyline({}), InputError);
  EXPECT_THROW(GeometricObject::union_of({}), InputError);
  EXPECT_THROW(GeometricObject::disk(NAN, 0, 1), InputError);
  EXPECT_THROW(leftmost_point(GeometricObject::v_line(0)), InputError);
}
