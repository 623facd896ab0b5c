#include <gtest/gtest.h>

#include "discplan/generators.hpp"
#include "discplan/motion_graph.hpp"
#include "discplan/planner.hpp"
#include "support.hpp"

using namespace discplan;

namespace {

Polygon box(double w, double h) { return make_polygon({{0, 0}, {w, 0}, {w, h}, {0, h}}); }

std::vector<GraphVertex> as_vertices(const std::vector<Point>& pts) {
  std::vector<GraphVertex> v;
  for (Point p : pts) v.push_back({p, true, false});
  return v;
}

struct Built {
  FreeSpace fs;
  MotionGraph graph;
  std::vector<SubregionDecoration> deco;
  PuncturedComponent pc;
};

Built build_fixture(const std::string& name) {
  const Scene s = testsupport::fixture(name);
  Built b;
  b.fs = compute_free_space(s.polygon);
  assign_configurations(b.fs, s.starts, s.targets);
  b.graph = build_motion_graph(b.fs, 0, component_vertices(b.fs.components[0]), &b.deco, &b.pc);
  return b;
}

std::vector<std::pair<int, int>> edge_pairs(const MotionGraph& g) {
  std::vector<std::pair<int, int>> e;
  for (const auto& x : g.edges) e.push_back({x.u, x.v});
  std::sort(e.begin(), e.end());
  return e;
}

// Largest gap between consecutive pieces and at the endpoints.
double path_gap(const std::vector<PathPiece>& p, Point a, Point b) {
  double gap = std::max(dist(start_point(p.front()), a), dist(end_point(p.back()), b));
  for (std::size_t k = 0; k + 1 < p.size(); ++k) gap = std::max(gap, dist(end_point(p[k]), start_point(p[k + 1])));
  return gap;
}

}  // namespace

TEST(Classify, TwoKindsFixture) {
  const Built b = build_fixture("two_kinds");
  ASSERT_EQ(b.deco.size(), 1u);
  EXPECT_EQ(b.deco[0].B, (std::vector<int>{0, 3, 4, 5}));
  EXPECT_EQ(b.deco[0].H, (std::vector<int>{1, 2}));
  EXPECT_EQ(b.deco[0].circular_list, (std::vector<int>{1, 0, 3, 4, 5}));
}

TEST(Classify, TouchesBoundaryMatchesB) {
  const Built b = build_fixture("two_kinds");
  for (int k : b.deco[0].B) EXPECT_TRUE(touches_boundary(b.fs.components[0], b.graph.vertices[k].position));
  for (int k : b.deco[0].H) EXPECT_FALSE(touches_boundary(b.fs.components[0], b.graph.vertices[k].position));
}

TEST(MotionGraph, TwoKindsEdges) {
  const Built b = build_fixture("two_kinds");
  EXPECT_EQ(edge_pairs(b.graph),
            (std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}, {1, 5}, {3, 4}, {4, 5}}));
  EXPECT_EQ(b.graph.find_edge(1, 2)->recipe.kind, EdgeKind::HH);
  EXPECT_EQ(b.graph.find_edge(0, 3)->recipe.kind, EdgeKind::BB);
  EXPECT_EQ(b.graph.find_edge(0, 1)->recipe.kind, EdgeKind::HB);
}

TEST(MotionGraph, TwoFreeDiscsGiveOneEdge) {
  const FreeSpace fs = compute_free_space(box(20, 10));
  std::vector<SubregionDecoration> deco;
  const MotionGraph g = build_motion_graph(fs, 0, as_vertices({{5, 5}, {15, 5}}), &deco);
  ASSERT_EQ(deco.size(), 1u);
  EXPECT_EQ(deco[0].H, (std::vector<int>{0, 1}));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].u, 0);
  EXPECT_EQ(g.edges[0].v, 1);
}

TEST(MotionGraph, EdgePathsAreContinuous) {
  const Built b = build_fixture("two_kinds");
  for (const auto& e : b.graph.edges) {
    const auto p = b.graph.path(e.u, e.v);
    ASSERT_FALSE(p.empty());
    EXPECT_LE(path_gap(p, b.graph.vertices[e.u].position, b.graph.vertices[e.v].position), 1e-7);
    const auto q = b.graph.path(e.v, e.u);
    EXPECT_LE(path_gap(q, b.graph.vertices[e.v].position, b.graph.vertices[e.u].position), 1e-7);
  }
  EXPECT_THROW(b.graph.path(2, 4), std::out_of_range);
}

TEST(Beta, OnCircleAndOnGamma) {
  for (const char* name : {"two_kinds", "three_parts"}) {
    const Built b = build_fixture(name);
    for (const auto& d : b.deco) {
      std::set<int> bset(d.B.begin(), d.B.end());
      for (const auto& [k, beta] : d.beta) {
        EXPECT_LE(distance_to_chain(d.gamma, beta), 1e-7) << name << " vertex " << k;
        if (bset.count(k)) EXPECT_NEAR(dist(beta, b.graph.vertices[k].position), 2.0, 1e-7) << name;
      }
    }
  }
}

TEST(Beta, SingleRunPerBoundaryVertex) {
  for (const char* name : {"two_kinds", "three_parts"}) {
    const Built b = build_fixture(name);
    for (const auto& d : b.deco)
      for (int k : d.B) EXPECT_EQ(tag_runs(d.gamma, k).size(), 1u) << name << " vertex " << k;
  }
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Scene s = generate_random({seed, 40, 6});
    FreeSpace fs = compute_free_space(s.polygon);
    assign_configurations(fs, s.starts, s.targets);
    for (const auto& c : fs.components) {
      if (c.starts.empty()) continue;
      std::vector<SubregionDecoration> deco;
      build_motion_graph(fs, c.id, component_vertices(c), &deco);
      for (const auto& d : deco)
        for (int k : d.B) EXPECT_EQ(tag_runs(d.gamma, k).size(), 1u) << "seed " << seed;
    }
  }
}

TEST(RayShoot, VerticallyAlignedHitsLowestPoint) {
  const FreeSpace fs = compute_free_space(box(40, 40));
  const PuncturedComponent pc = puncture(fs, 0, {{20, 15}, {20, 22}});
  ASSERT_EQ(pc.subregions.size(), 1u);
  const RayHit h = ray_shoot_up(pc.subregions[0], {20, 15}, 0);
  EXPECT_EQ(h.tag, 1);
  EXPECT_FALSE(h.on_gamma);
  EXPECT_TRUE(approx_equal(h.c, {20, 20}, 1e-9));
  const RayHit top = ray_shoot_up(pc.subregions[0], {20, 22}, 1);
  EXPECT_EQ(top.tag, kFreeBoundaryTag);
  EXPECT_TRUE(top.on_gamma);
  EXPECT_TRUE(approx_equal(top.c, {20, 39}, 1e-9));
}

TEST(RayShoot, OffsetHitOnCircle) {
  const FreeSpace fs = compute_free_space(box(40, 40));
  const PuncturedComponent pc = puncture(fs, 0, {{20, 15}, {21, 22}});
  const RayHit h = ray_shoot_up(pc.subregions[0], {20, 15}, 0);
  EXPECT_EQ(h.tag, 1);
  EXPECT_NEAR(dist(h.c, {21, 22}), 2.0, 1e-9);
  EXPECT_NEAR(h.c.x, 20, 1e-12);
  EXPECT_NEAR(h.c.y, 22 - std::sqrt(3.0), 1e-9);
}

TEST(DeltaCurve, DirectWhenUnobstructed) {
  const Polygon poly = box(20, 20);
  const auto p = delta_curve(poly, {10, 10}, {11.5, 11});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(approx_equal(start_point(p[0]), {10, 10}));
  EXPECT_TRUE(approx_equal(end_point(p[0]), {11.5, 11}));
}

TEST(DeltaCurve, DetoursAroundReflexCorner) {
  const Polygon L = make_polygon({{0, 0}, {8, 0}, {8, 4}, {4, 4}, {4, 8}, {0, 8}});
  const Point x{4.3, 2.98}, y{2.98, 4.3};
  ASSERT_LT(dist(x, y), 2.0);
  const auto p = delta_curve(L, x, y);
  ASSERT_GT(p.size(), 1u);
  EXPECT_LE(path_gap(p, x, y), 1e-9);
  double len = 0;
  for (const auto& piece : p) {
    len += length(piece);
    for (int k = 0; k <= 200; ++k) {
      const Point q = point_at(piece, k / 200.0);
      EXPECT_GE(boundary_distance(L, q), 1.0 - 1e-6);
      EXPECT_LE(dist(q, x), 2.0 + 1e-6);
    }
  }
  EXPECT_GT(len, dist(x, y));
}

TEST(DeltaCurve, BlockedThrows) {
  // Two points separated by a wall that leaves no gap.
  const Polygon U = make_polygon({{0, 0}, {10, 0}, {10, 6}, {5.2, 6}, {5.2, 1.8}, {4.8, 1.8}, {4.8, 6}, {0, 6}});
  EXPECT_THROW(delta_curve(U, {3.6, 4.5}, {6.4, 4.5}), PathBlocked);
}

TEST(MotionGraph, ThreePartsConnected) {
  const Built b = build_fixture("three_parts");
  EXPECT_EQ(b.pc.subregions.size(), 3u);
  EXPECT_EQ(b.graph.vertices.size(), 8u);
  EXPECT_GE(b.graph.edges.size(), 7u);
}

TEST(MotionGraph, Deterministic) {
  const Built a = build_fixture("three_parts"), b = build_fixture("three_parts");
  ASSERT_EQ(a.graph.edges.size(), b.graph.edges.size());
  for (std::size_t i = 0; i < a.graph.edges.size(); ++i) {
    EXPECT_EQ(a.graph.edges[i].u, b.graph.edges[i].u);
    EXPECT_EQ(a.graph.edges[i].v, b.graph.edges[i].v);
    ASSERT_EQ(a.graph.edges[i].recipe.pieces.size(), b.graph.edges[i].recipe.pieces.size());
    for (std::size_t k = 0; k < a.graph.edges[i].recipe.pieces.size(); ++k)
      EXPECT_EQ(dist(end_point(a.graph.edges[i].recipe.pieces[k]), end_point(b.graph.edges[i].recipe.pieces[k])), 0.0);
  }
}

// Every edge path keeps a unit robot clear of the walls and of every other
// graph vertex parked at its configuration.
TEST(MotionGraph, EdgePathsClearObstaclesAndParkedRobots) {
  int edges = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Scene s = generate_random({seed, 50, 8});
    FreeSpace fs = compute_free_space(s.polygon);
    assign_configurations(fs, s.starts, s.targets);
    for (const auto& c : fs.components) {
      if (c.starts.empty()) continue;
      const MotionGraph g = build_motion_graph(fs, c.id, component_vertices(c));
      for (const auto& e : g.edges) {
        ++edges;
        for (const auto& piece : e.recipe.pieces) {
          EXPECT_GE(boundary_distance(fs.polygon, piece), 1.0 - 1e-6) << "seed " << seed;
          for (std::size_t k = 0; k < g.vertices.size(); ++k) {
            if (static_cast<int>(k) == e.u || static_cast<int>(k) == e.v) continue;
            EXPECT_GE(min_distance_piece_point(piece, g.vertices[k].position), 2.0 - 1e-6)
                << "seed " << seed << " edge " << e.u << "-" << e.v << " vertex " << k;
          }
        }
      }
    }
  }
  EXPECT_GT(edges, 200);
}
