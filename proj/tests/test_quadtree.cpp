#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

using namespace hopspan;

namespace {

std::vector<Point> random_points(std::size_t n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<Point> pts(n, Point(static_cast<std::size_t>(d)));
  for (auto& p : pts)
    for (auto& v : p) v = U(rng);
  return pts;
}

std::size_t count_inside(const std::vector<Point>& pts, const QuadtreeCell& c) {
  std::size_t k = 0;
  for (const auto& p : pts) {
    bool in = true;
    for (int i = 0; i < c.dimension(); ++i) in = in && c.lo(i) <= p[i] && p[i] < c.hi(i);
    k += in;
  }
  return k;
}

}  // namespace

TEST(Centroid, SinglePoint) {
  const std::vector<Point> one{{0.3, 0.7}};
  const auto c = quadtree_centroid(one);
  EXPECT_EQ(count_inside(one, c), 1u);
  EXPECT_THROW(quadtree_centroid(std::vector<Point>{}), InputError);
}

TEST(Centroid, FourOfFive) {
  const std::vector<Point> pts{{0.1, 0.1}, {0.2, 0.3}, {0.4, 0.1}, {0.3, 0.45}, {0.9, 0.9}};
  const auto c = quadtree_centroid(pts);
  EXPECT_EQ(c.level, 1);
  EXPECT_EQ(c.index, (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(count_inside(pts, c), 4u);
}

TEST(Centroid, TwoSidedBound) {
  for (int d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t n = 1 + seed * 7 % 300;
      auto pts = random_points(n, d, seed);
      if (seed % 3 == 0)  // clustered
        for (auto& p : pts)
          for (auto& v : p) v = 0.25 + v * 1e-3;
      const auto c = quadtree_centroid(pts);
      const std::size_t w = std::size_t{1} << d;
      const std::size_t bound = (w * n + w) / (w + 1);
      const std::size_t inside = count_inside(pts, c);
      EXPECT_LE(inside, bound) << "d=" << d << " seed=" << seed;
      EXPECT_LE(n - inside, bound) << "d=" << d << " seed=" << seed;
    }
  }
}

TEST(Partition, FewPointsGiveRoot) {
  const auto pts = random_points(5, 2, 1);
  const auto cells = quadtree_partition(pts, 10);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].cell.outer, unit_root_cell(2));
  EXPECT_FALSE(cells[0].cell.inner);
}

TEST(Partition, DiagonalOnePerCell) {
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({(i + 0.5) / 40, (i + 0.5) / 40});
  const auto cells = quadtree_partition(pts, 1);
  std::size_t total = 0;
  for (const auto& c : cells) {
    EXPECT_LE(c.points.size(), 1u);
    total += c.points.size();
    if (c.cell.inner) {
      EXPECT_TRUE(c.cell.outer.contains(*c.cell.inner) && !(c.cell.outer == *c.cell.inner));
    }
  }
  EXPECT_EQ(total, pts.size());
  // disjointness: sample points of the root are claimed by exactly one cell
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0, 2);
  for (int it = 0; it < 5000; ++it) {
    const Point p{U(rng), U(rng)};
    int owners = 0;
    for (const auto& c : cells) owners += c.cell.contains(p);
    EXPECT_EQ(owners, 1);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int owners = 0;
    for (const auto& c : cells) owners += c.cell.contains(pts[i]);
    EXPECT_EQ(owners, 1);
  }
}

TEST(Partition, RandomPointsArePartitioned) {
  for (int d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto pts = random_points(500, d, seed);
      for (std::size_t r : {2u, 7u, 50u}) {
        const auto cells = quadtree_partition(pts, r);
        std::vector<int> owner(pts.size(), 0);
        for (const auto& c : cells) {
          EXPECT_LE(c.points.size(), r);
          for (std::size_t i : c.points) {
            ++owner[i];
            EXPECT_TRUE(c.cell.contains(pts[i]));
          }
        }
        for (int o : owner) EXPECT_EQ(o, 1);
        EXPECT_LE(cells.size(), 8 * (pts.size() / r + 1) * (std::size_t{1} << d));
      }
    }
  }
}

TEST(Jitter, SmallAndDeterministic) {
  const std::vector<GeometricObject> objs{GeometricObject::disk(0.5, 0.5, 0.1), GeometricObject::disk(0.5, 0.5, 0.1)};
  const auto a = jittered_leftmost_points(objs, 1);
  const auto b = jittered_leftmost_points(objs, 1);
  EXPECT_EQ(a, b);
  EXPECT_NE(a[0], a[1]);
  for (const auto& p : a) {
    EXPECT_LT(std::abs(p[0] - 0.4), std::ldexp(1.0, -40));
    EXPECT_LT(std::abs(p[1] - 0.5), std::ldexp(1.0, -40));
  }
}
