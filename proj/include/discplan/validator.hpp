// Independent checks of a motion plan against the continuous problem, plus
// brute-force oracles: a grid flood fill of the free space and an
// exhaustive search over pebble occupancy states.
//
// Uses only the geometry kernel and the scene/plan types.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "discplan/geometry.hpp"
#include "discplan/pebble.hpp"
#include "discplan/scene.hpp"

namespace discplan {

inline constexpr double kValidationEps = 1e-6;
inline constexpr int kAuditSamples = 1000;

enum class ViolationKind { ObstacleClearance, RobotClearance, Discontinuity, WrongFinalOccupancy, SimultaneousMotion };

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::ObstacleClearance: return "ObstacleClearance";
    case ViolationKind::RobotClearance: return "RobotClearance";
    case ViolationKind::Discontinuity: return "Discontinuity";
    case ViolationKind::WrongFinalOccupancy: return "WrongFinalOccupancy";
    case ViolationKind::SimultaneousMotion: return "SimultaneousMotion";
  }
  return "?";
}

struct Violation {
  std::size_t move_index = 0;
  ViolationKind kind = ViolationKind::Discontinuity;
  double worst_value = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double min_obstacle_clearance = std::numeric_limits<double>::infinity();
  double min_robot_clearance = std::numeric_limits<double>::infinity();
  /// Same minima over the sampled audit points.
  double sampled_obstacle_clearance = std::numeric_limits<double>::infinity();
  double sampled_robot_clearance = std::numeric_limits<double>::infinity();

  bool ok() const { return violations.empty(); }
};

class MalformedPlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_piece(const PathPiece& p, std::size_t i) {
  auto finite = [](Point q) { return std::isfinite(q.x) && std::isfinite(q.y); };
  if (const auto* s = std::get_if<Segment>(&p)) {
    if (!finite(s->a) || !finite(s->b)) throw MalformedPlan("move " + std::to_string(i) + ": non-finite segment");
    return;
  }
  const Arc& a = std::get<Arc>(p);
  if (!finite(a.center) || !(a.radius > 0) || !std::isfinite(a.theta_start) || !std::isfinite(a.theta_end))
    throw MalformedPlan("move " + std::to_string(i) + ": invalid arc");
}

/// Signed obstacle clearance of a point: distance to the boundary, negated
/// outside the polygon.
inline double point_clearance(const Polygon& poly, Point p) {
  const double d = boundary_distance(poly, p);
  return point_in_polygon(p, poly) == Location::Outside ? -d : d;
}

}  // namespace detail

inline ValidationReport validate(const Scene& scene, const MotionPlan& plan, double eps = kValidationEps) {
  constexpr double kJoin = 1e-7;
  ValidationReport rep;
  const Polygon& poly = scene.polygon;
  std::vector<Point> parked = scene.starts;

  for (std::size_t i = 0; i < plan.moves.size(); ++i) {
    const DiscMove& mv = plan.moves[i];
    for (const auto& p : mv.path) detail::check_piece(p, i);
    auto flag = [&](ViolationKind k, double v) { rep.violations.push_back({i, k, v}); };

    // Continuity.
    if (mv.path.empty()) {
      if (dist(mv.from, mv.to) > kJoin) flag(ViolationKind::Discontinuity, dist(mv.from, mv.to));
    } else {
      double gap = dist(start_point(mv.path.front()), mv.from);
      gap = std::max(gap, dist(end_point(mv.path.back()), mv.to));
      for (std::size_t k = 0; k + 1 < mv.path.size(); ++k)
        gap = std::max(gap, dist(end_point(mv.path[k]), start_point(mv.path[k + 1])));
      if (gap > kJoin) flag(ViolationKind::Discontinuity, gap);
    }

    // The mover must be one of the parked robots.
    std::size_t who = parked.size();
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < parked.size(); ++r) {
      const double d = dist(parked[r], mv.from);
      if (d < nearest) nearest = d, who = r;
    }
    if (nearest > kJoin) {
      flag(ViolationKind::SimultaneousMotion, nearest);
      who = parked.size();
    }

    // Obstacle clearance: exact per piece, and inside the polygon.
    double obst = std::numeric_limits<double>::infinity();
    for (const auto& p : mv.path) {
      const double d = point_in_polygon(point_at(p, 0.5), poly) == Location::Outside ? 0.0 : boundary_distance(poly, p);
      obst = std::min(obst, d);
    }
    // Robot clearance: exact centre-to-path distance to every parked robot.
    double robo = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < parked.size(); ++r) {
      if (r == who) continue;
      for (const auto& p : mv.path) robo = std::min(robo, min_distance_piece_point(p, parked[r]));
    }
    // Sampled audit along the whole move.
    double total = 0;
    for (const auto& p : mv.path) total += length(p);
    if (total > 0) {
      const int samples = kAuditSamples;
      std::size_t k = 0;
      double before = 0;
      for (int j = 0; j <= samples; ++j) {
        const double s = total * j / samples;
        while (k + 1 < mv.path.size() && before + length(mv.path[k]) < s) before += length(mv.path[k++]);
        const double len = length(mv.path[k]);
        const Point q = point_at(mv.path[k], len > 0 ? std::clamp((s - before) / len, 0.0, 1.0) : 0.0);
        const double c = detail::point_clearance(poly, q);
        rep.sampled_obstacle_clearance = std::min(rep.sampled_obstacle_clearance, c);
        if (c < 0) obst = std::min(obst, 0.0);
        for (std::size_t r = 0; r < parked.size(); ++r)
          if (r != who) rep.sampled_robot_clearance = std::min(rep.sampled_robot_clearance, dist(q, parked[r]));
      }
    }
    rep.min_obstacle_clearance = std::min(rep.min_obstacle_clearance, obst);
    rep.min_robot_clearance = std::min(rep.min_robot_clearance, robo);
    if (obst < 1.0 - eps) flag(ViolationKind::ObstacleClearance, obst);
    if (robo < 2.0 - eps) flag(ViolationKind::RobotClearance, robo);

    if (who < parked.size()) parked[who] = mv.to;
  }

  // Final occupancy as a multiset.
  std::vector<Point> left = parked;
  double worst = 0;
  bool bad = left.size() != scene.targets.size();
  for (Point t : scene.targets) {
    std::size_t best = left.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < left.size(); ++r)
      if (dist(left[r], t) < bd) bd = dist(left[r], t), best = r;
    if (best == left.size() || bd > kJoin) {
      bad = true;
      worst = std::max(worst, best == left.size() ? std::numeric_limits<double>::infinity() : bd);
      continue;
    }
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(best));
  }
  if (bad) rep.violations.push_back({plan.moves.size(), ViolationKind::WrongFinalOccupancy, worst});
  return rep;
}

// ---- grid oracle ----------------------------------------------------------

struct GridLabels {
  double x0 = 0, y0 = 0, resolution = 0;
  int nx = 0, ny = 0;
  std::vector<int> label;  // -1 where not free, else component index
  int component_count = 0;
  std::vector<std::size_t> cells_per_component;

  int at(int i, int j) const { return label[static_cast<std::size_t>(j) * nx + i]; }
  Point point(int i, int j) const { return {x0 + i * resolution, y0 + j * resolution}; }
  /// Label of the grid point nearest p, or -1 outside the grid.
  int label_near(Point p) const {
    const int i = static_cast<int>(std::lround((p.x - x0) / resolution));
    const int j = static_cast<int>(std::lround((p.y - y0) / resolution));
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
    return at(i, j);
  }
};

/// Samples {inside the polygon, distance to the boundary >= 1} on a square
/// grid and labels 4-connected components in scan order.
inline GridLabels grid_free_space_oracle(const Polygon& poly, double resolution) {
  GridLabels g;
  g.resolution = resolution;
  double xmin = poly[0].x, xmax = xmin, ymin = poly[0].y, ymax = ymin;
  for (Point v : poly.vertices) {
    xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
  }
  g.x0 = xmin;
  g.y0 = ymin;
  g.nx = static_cast<int>(std::floor((xmax - xmin) / resolution)) + 1;
  g.ny = static_cast<int>(std::floor((ymax - ymin) / resolution)) + 1;
  g.label.assign(static_cast<std::size_t>(g.nx) * g.ny, -1);

  // Edge buckets on unit cells, each edge registered in every cell within
  // distance one of its bounding box.
  const int bx = static_cast<int>(std::ceil(xmax - xmin)) + 3, by = static_cast<int>(std::ceil(ymax - ymin)) + 3;
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(bx) * by);
  auto cell = [&](double v, double lo) { return static_cast<int>(std::floor(v - lo)) + 1; };
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const Segment s = poly.edge(e);
    const int i0 = std::max(0, cell(std::min(s.a.x, s.b.x) - 1, xmin)), i1 = std::min(bx - 1, cell(std::max(s.a.x, s.b.x) + 1, xmin));
    const int j0 = std::max(0, cell(std::min(s.a.y, s.b.y) - 1, ymin)), j1 = std::min(by - 1, cell(std::max(s.a.y, s.b.y) + 1, ymin));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) bucket[static_cast<std::size_t>(j) * bx + i].push_back(static_cast<int>(e));
  }
  std::vector<char> free(g.label.size(), 0);
  std::vector<double> xs;
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y0 + j * resolution;
    xs.clear();
    for (std::size_t e = 0; e < poly.size(); ++e) {
      const Point a = poly[e], b = poly[(e + 1) % poly.size()];
      if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - g.x0) / resolution)));
      const int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((xs[k + 1] - g.x0) / resolution)));
      for (int i = i0; i <= i1; ++i) {
        const Point p{g.x0 + i * resolution, y};
        bool ok = true;
        for (int e : bucket[static_cast<std::size_t>(cell(y, ymin)) * bx + cell(p.x, xmin)])
          if (distance_point_segment(p, poly.edge(e)) < 1.0) {
            ok = false;
            break;
          }
        free[static_cast<std::size_t>(j) * g.nx + i] = ok;
      }
    }
  }
  std::vector<std::size_t> stack;
  for (std::size_t idx = 0; idx < free.size(); ++idx) {
    if (!free[idx] || g.label[idx] >= 0) continue;
    const int id = g.component_count++;
    std::size_t count = 0;
    g.label[idx] = id;
    stack.push_back(idx);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      ++count;
      const int i = static_cast<int>(u % g.nx), j = static_cast<int>(u / g.nx);
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) continue;
        const std::size_t v = static_cast<std::size_t>(b) * g.nx + a;
        if (free[v] && g.label[v] < 0) g.label[v] = id, stack.push_back(v);
      }
    }
    g.cells_per_component.push_back(count);
  }
  return g;
}

// ---- pebble oracle --------------------------------------------------------

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PebbleOracleResult {
  bool solvable = false;
  PebblePlan witness;  // unit moves; shortest in step count
};

/// Breadth-first search over occupancy bitmasks with single-pebble,
/// single-edge transitions.
inline PebbleOracleResult pebble_bfs_oracle(const PebbleProblem& problem) {
  const int n = problem.vertex_count;
  if (n > 16 || problem.starts.size() > 6) throw TooLarge("pebble oracle is limited to 16 vertices and 6 pebbles");
  PebbleOracleResult res;
  if (problem.starts.size() != problem.targets.size()) return res;
  const auto adj = problem.adjacency();
  std::uint32_t s = 0, t = 0;
  for (int v : problem.starts) s |= 1u << v;
  for (int v : problem.targets) t |= 1u << v;
  if (static_cast<std::size_t>(std::popcount(s)) != problem.starts.size() ||
      static_cast<std::size_t>(std::popcount(t)) != problem.targets.size())
    return res;
  std::vector<std::int32_t> prev(std::size_t{1} << n, -1);
  std::vector<std::pair<std::int8_t, std::int8_t>> how(prev.size());
  std::deque<std::uint32_t> q{s};
  prev[s] = static_cast<std::int32_t>(s);
  while (!q.empty() && prev[t] < 0) {
    const std::uint32_t u = q.front();
    q.pop_front();
    for (int a = 0; a < n; ++a) {
      if (!(u >> a & 1u)) continue;
      for (int b : adj[a]) {
        if (u >> b & 1u) continue;
        const std::uint32_t w = (u & ~(1u << a)) | (1u << b);
        if (prev[w] >= 0) continue;
        prev[w] = static_cast<std::int32_t>(u);
        how[w] = {static_cast<std::int8_t>(a), static_cast<std::int8_t>(b)};
        q.push_back(w);
      }
    }
  }
  if (prev[t] < 0) return res;
  res.solvable = true;
  for (std::uint32_t w = t; w != s; w = static_cast<std::uint32_t>(prev[w]))
    res.witness.moves.push_back({how[w].first, how[w].second, {how[w].first, how[w].second}});
  std::reverse(res.witness.moves.begin(), res.witness.moves.end());
  return res;
}

}  // namespace discplan
