#include <gtest/gtest.h>

#include "discplan/generators.hpp"
#include "discplan/planner.hpp"
#include "discplan/validator.hpp"
#include "support.hpp"

using namespace discplan;

namespace {

Scene box_scene(double w, double h, std::vector<Point> s, std::vector<Point> t) {
  return {"box", 0, make_polygon({{0, 0}, {w, 0}, {w, h}, {0, h}}), std::move(s), std::move(t)};
}

std::vector<ViolationKind> kinds(const ValidationReport& r) {
  std::vector<ViolationKind> k;
  for (const auto& v : r.violations) k.push_back(v.kind);
  return k;
}

}  // namespace

TEST(Validate, StraightMovePasses) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const MotionPlan p{{0}, {{{2, 3}, {8, 3}, {Segment{{2, 3}, {8, 3}}}}}};
  const ValidationReport r = validate(s, p);
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.min_obstacle_clearance, 2.0, 1e-12);
}

TEST(Validate, CornerCutFlagsObstacleClearance) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const MotionPlan p{{0}, {{{2, 3}, {8, 3}, {Segment{{2, 3}, {5, 0.8}}, Segment{{5, 0.8}, {8, 3}}}}}};
  const ValidationReport r = validate(s, p);
  ASSERT_EQ(kinds(r), (std::vector<ViolationKind>{ViolationKind::ObstacleClearance}));
  EXPECT_NEAR(r.violations[0].worst_value, 0.8, 1e-12);
  EXPECT_EQ(r.violations[0].move_index, 0u);
}

TEST(Validate, PathLeavingPolygonIsCaught) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const MotionPlan p{{0}, {{{2, 3}, {8, 3}, {Segment{{2, 3}, {5, -3}}, Segment{{5, -3}, {8, 3}}}}}};
  const ValidationReport r = validate(s, p);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, ViolationKind::ObstacleClearance);
  EXPECT_LE(r.violations[0].worst_value, 0.0);
}

TEST(Validate, PassingParkedRobotFlagsRobotClearance) {
  const Scene s = box_scene(20, 6, {{3, 3}, {10, 4.5}}, {{17, 3}, {10, 4.5}});
  const MotionPlan p{{0}, {{{3, 3}, {17, 3}, {Segment{{3, 3}, {17, 3}}}}}};
  const ValidationReport r = validate(s, p);
  ASSERT_EQ(kinds(r), (std::vector<ViolationKind>{ViolationKind::RobotClearance}));
  EXPECT_NEAR(r.violations[0].worst_value, 1.5, 1e-12);
  EXPECT_NEAR(r.sampled_robot_clearance, 1.5, 1e-9);
}

TEST(Validate, Discontinuity) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const MotionPlan p{{0}, {{{2, 3}, {8, 3}, {Segment{{2, 3}, {5, 3}}, Segment{{5, 3.5}, {8, 3}}}}}};
  const ValidationReport r = validate(s, p);
  ASSERT_EQ(kinds(r), (std::vector<ViolationKind>{ViolationKind::Discontinuity}));
  EXPECT_NEAR(r.violations[0].worst_value, 0.5, 1e-12);
}

TEST(Validate, WrongFinalOccupancy) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const ValidationReport r = validate(s, {});
  ASSERT_EQ(kinds(r), (std::vector<ViolationKind>{ViolationKind::WrongFinalOccupancy}));
  EXPECT_EQ(r.violations[0].move_index, 0u);
}

TEST(Validate, MoverMustBeParked) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  const MotionPlan p{{0}, {{{5, 3}, {8, 3}, {Segment{{5, 3}, {8, 3}}}}}};
  const auto k = kinds(validate(s, p));
  EXPECT_NE(std::find(k.begin(), k.end(), ViolationKind::SimultaneousMotion), k.end());
}

TEST(Validate, MalformedArcThrows) {
  const Scene s = box_scene(10, 6, {{2, 3}}, {{8, 3}});
  Arc bad = make_arc({5, 3}, 1, 0, 1);
  bad.radius = -1;
  const MotionPlan p{{0}, {{{2, 3}, {8, 3}, {bad}}}};
  EXPECT_THROW(validate(s, p), MalformedPlan);
}

TEST(Validate, ExactAndSampledAgree) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scene s = generate_random({seed, 40, 6});
    const MotionPlan plan = solve(s);
    const ValidationReport r = validate(s, plan);
    ASSERT_TRUE(r.ok()) << "seed " << seed;
    double longest = 0;
    for (const auto& m : plan.moves) {
      double len = 0;
      for (const auto& p : m.path) len += length(p);
      longest = std::max(longest, len);
    }
    const double spacing = longest / kAuditSamples;
    EXPECT_LE(r.min_obstacle_clearance, r.sampled_obstacle_clearance + 1e-9);
    EXPECT_LE(r.sampled_obstacle_clearance - r.min_obstacle_clearance, spacing + 1e-9);
    EXPECT_LE(r.min_robot_clearance, r.sampled_robot_clearance + 1e-9);
    EXPECT_LE(r.sampled_robot_clearance - r.min_robot_clearance, spacing + 1e-9);
  }
}

TEST(GridOracle, SquareArea) {
  const GridLabels g = grid_free_space_oracle(make_polygon({{0, 0}, {6, 0}, {6, 6}, {0, 6}}), 0.02);
  ASSERT_EQ(g.component_count, 1);
  const double area = g.cells_per_component[0] * g.resolution * g.resolution;
  EXPECT_NEAR(area, 16.0, 0.02 * 16.0);
}

TEST(GridOracle, AgreesWithExactFreeSpace) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scene s = generate_random({seed, 30, 1});
    const FreeSpace fs = compute_free_space(s.polygon);
    const GridLabels g = grid_free_space_oracle(s.polygon, 0.05);
    int agree = 0, total = 0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const Point p = g.point(i, j);
        if (std::abs(boundary_distance(s.polygon, p) - 1.0) < 0.04) continue;
        ++total;
        agree += (g.at(i, j) >= 0) == locate(fs, p).has_value();
      }
    EXPECT_GE(agree, total * 0.999) << "seed " << seed;
  }
}
