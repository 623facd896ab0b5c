#include <gtest/gtest.h>

#include <random>

#include "discplan/free_space.hpp"
#include "discplan/generators.hpp"
#include "support.hpp"

using namespace discplan;

namespace {

Polygon square(double side) { return make_polygon({{0, 0}, {side, 0}, {side, side}, {0, side}}); }

int arc_count(const Chain& c) {
  int n = 0;
  for (const auto& cv : c.pieces) n += is_arc(cv.piece);
  return n;
}

}  // namespace

TEST(FreeSpace, SquareErodesToSquare) {
  const FreeSpace fs = compute_free_space(square(6));
  ASSERT_EQ(fs.components.size(), 1u);
  const Chain& c = fs.components[0].outer();
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(arc_count(c), 0);
  EXPECT_NEAR(fs.components[0].area, 16.0, 1e-9);
  EXPECT_NEAR(c.box.xmin, 1, 1e-12);
  EXPECT_NEAR(c.box.ymax, 5, 1e-12);
}

TEST(FreeSpace, NarrowCorridorSplitsDumbbell) {
  const Scene s = generate_dumbbell(1.9);
  const FreeSpace fs = compute_free_space(s.polygon);
  EXPECT_EQ(fs.components.size(), 2u);
  EXPECT_EQ(grid_free_space_oracle(s.polygon, 0.02).component_count, 2);
}

TEST(FreeSpace, LShapeHasOneReflexArc) {
  const Polygon L = make_polygon({{0, 0}, {8, 0}, {8, 4}, {4, 4}, {4, 8}, {0, 8}});
  const FreeSpace fs = compute_free_space(L);
  ASSERT_EQ(fs.components.size(), 1u);
  const Chain& c = fs.components[0].outer();
  ASSERT_EQ(arc_count(c), 1);
  for (const auto& cv : c.pieces)
    if (const auto* a = std::get_if<Arc>(&cv.piece)) {
      EXPECT_TRUE(approx_equal(a->center, {4, 4}));
      EXPECT_DOUBLE_EQ(a->radius, 1.0);
      EXPECT_NEAR(a->sweep(), kPi / 2, 1e-12);
    }
  // Curvature check by sampling: points of the arc sit at distance one
  // from the reflex vertex.
  for (const auto& cv : c.pieces)
    if (is_arc(cv.piece))
      for (int k = 0; k <= 10; ++k) EXPECT_NEAR(dist(point_at(cv.piece, k / 10.0), {4, 4}), 1.0, 1e-12);
}

TEST(FreeSpace, TooThinPolygonIsEmpty) {
  EXPECT_TRUE(compute_free_space(square(1.9)).components.empty());
  EXPECT_EQ(grid_free_space_oracle(square(1.9), 0.02).component_count, 0);
}

TEST(FreeSpace, DegeneratePolygonRejected) {
  EXPECT_THROW(compute_free_space(Polygon{{{0, 0}, {4, 4}, {4, 0}, {0, 4}}}), DegeneratePolygon);
  EXPECT_THROW(compute_free_space(Polygon{{{0, 0}, {4, 0}, {4, 1e-9}, {4, 4}}}), DegeneratePolygon);
}

TEST(Locate, CentreAndTooClose) {
  const FreeSpace fs = compute_free_space(square(6));
  EXPECT_EQ(locate(fs, {3, 3}), std::optional<int>(0));
  EXPECT_FALSE(locate(fs, {0.5, 3}).has_value());
  EXPECT_EQ(locate(fs, {1, 3}), std::optional<int>(0));  // closed free space
}

TEST(Locate, AgreesWithClearanceDefinition) {
  for (std::uint64_t seed : {3u, 8u, 21u}) {
    const Scene s = generate_random({seed, 40, 2});
    const FreeSpace fs = compute_free_space(s.polygon);
    std::mt19937_64 rng(seed);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (Point v : fs.polygon.vertices)
      xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x), ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
      const Point p{ux(rng), uy(rng)};
      const double clearance = boundary_distance(fs.polygon, p);
      if (std::abs(clearance - 1.0) < 1e-6) continue;
      const bool free = point_in_polygon(p, fs.polygon) == Location::Inside && clearance >= 1.0;
      EXPECT_EQ(locate(fs, p).has_value(), free) << "seed " << seed << " at " << p.x << "," << p.y;
      ++checked;
    }
    EXPECT_GT(checked, 900);
  }
}

TEST(Components, OneBoundaryChainEach) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const FreeSpace fs = compute_free_space(generate_random({seed, 60, 1}).polygon);
    for (const auto& c : fs.components) EXPECT_EQ(c.boundary.size(), 1u) << "seed " << seed;
  }
}

TEST(CollisionRegion, FullDiscInOpenSpace) {
  const FreeSpace fs = compute_free_space(square(20));
  const CollisionRegion r = collision_region(fs, {10, 10});
  ASSERT_EQ(r.boundary.size(), 1u);
  ASSERT_EQ(r.boundary[0].size(), 1u);
  const auto& a = std::get<Arc>(r.boundary[0].pieces[0].piece);
  EXPECT_NEAR(a.sweep(), kTwoPi, 1e-12);
  EXPECT_NEAR(r.boundary[0].area, 4 * kPi, 1e-9);
}

TEST(CollisionRegion, ClippedNearWallStaysConnected) {
  const Polygon poly = square(20);
  const FreeSpace fs = compute_free_space(poly);
  const Point x{2.2, 10};
  const CollisionRegion r = collision_region(fs, x);
  EXPECT_EQ(r.boundary.size(), 1u);
  const auto g = grid_free_space_oracle(poly, 0.01);
  EXPECT_EQ(testsupport::pieces_in_disc(g, testsupport::label_around(g, x), x, 2.0), 1);
}

TEST(CollisionRegion, LensInCorridor) {
  const Polygon poly = make_polygon({{0, 0}, {20, 0}, {20, 2.5}, {0, 2.5}});
  const FreeSpace fs = compute_free_space(poly);
  const Point x{10, 1.25};
  const CollisionRegion r = collision_region(fs, x);
  ASSERT_EQ(r.boundary.size(), 1u);
  // Strip of height 0.5 clipped by the radius-2 disc: two segments, two arcs.
  EXPECT_EQ(r.boundary[0].size(), 4u);
  const auto g = grid_free_space_oracle(poly, 0.01);
  EXPECT_EQ(testsupport::pieces_in_disc(g, testsupport::label_around(g, x), x, 2.0), 1);
}

TEST(CollisionRegion, OutsideThrows) {
  const FreeSpace fs = compute_free_space(square(6));
  EXPECT_THROW(collision_region(fs, {0.5, 0.5}), OutsideFreeSpace);
}

TEST(Puncture, TwoFarPointsOneSubregion) {
  const FreeSpace fs = compute_free_space(make_polygon({{0, 0}, {20, 0}, {20, 10}, {0, 10}}));
  const PuncturedComponent pc = puncture(fs, 0, {{5, 5}, {15, 5}});
  ASSERT_EQ(pc.subregions.size(), 1u);
  EXPECT_EQ(pc.subregions[0].adjacent, (std::vector<int>{0, 1}));
}

TEST(Puncture, CorridorDiscsCutThreeParts) {
  const Scene s = testsupport::fixture("three_parts");
  FreeSpace fs = compute_free_space(s.polygon);
  ASSERT_EQ(fs.components.size(), 1u);
  std::vector<Point> v = s.starts;
  v.insert(v.end(), s.targets.begin(), s.targets.end());
  const PuncturedComponent pc = puncture(fs, 0, v);
  EXPECT_EQ(pc.subregions.size(), 3u);
  // The two corridor configurations (s3 = 2, t2 = 5) each border two parts.
  int touching2 = 0, touching5 = 0;
  for (const auto& sr : pc.subregions) {
    touching2 += std::count(sr.adjacent.begin(), sr.adjacent.end(), 2);
    touching5 += std::count(sr.adjacent.begin(), sr.adjacent.end(), 5);
  }
  EXPECT_EQ(touching2, 2);
  EXPECT_EQ(touching5, 2);
}

TEST(Puncture, PieceCountLinearInSize) {
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scene s = generate_random({seed, 40, 4});
    FreeSpace fs = compute_free_space(s.polygon);
    assign_configurations(fs, s.starts, s.targets);
    for (const auto& c : fs.components) {
      std::vector<Point> v = c.starts;
      v.insert(v.end(), c.targets.begin(), c.targets.end());
      const auto pc = puncture(fs, c.id, v);
      worst = std::max(worst, static_cast<double>(pc.piece_count()) / (v.size() + s.polygon.size()));
    }
  }
  // Every piece is a free-space boundary piece (at most 2n) or a collision
  // arc; a constant of 6 leaves room for arcs split at several crossings.
  EXPECT_LE(worst, 6.0);
}

TEST(Puncture, CollisionDiscsDisjointWhenSeparated) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scene s = generate_random({seed, 40, 5});
    std::vector<Point> v = s.starts;
    v.insert(v.end(), s.targets.begin(), s.targets.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) EXPECT_GT(dist(v[i], v[j]), 4 - kEps);
  }
}
