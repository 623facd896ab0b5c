// Feasibility check and end-to-end planning: per-component pebble plans
// realized as disc paths and concatenated in interference order.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "discplan/free_space.hpp"
#include "discplan/interference.hpp"
#include "discplan/motion_graph.hpp"
#include "discplan/pebble.hpp"
#include "discplan/scene.hpp"

namespace discplan {

inline constexpr double kSeparation = 4.0;
/// Start and target closer than this are the same configuration.
inline constexpr double kCoincident = 1e-9;

enum class Verdict { Feasible, CountMismatch, SeparationViolation, OutsideFreeSpace };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "Feasible";
    case Verdict::CountMismatch: return "CountMismatch";
    case Verdict::SeparationViolation: return "SeparationViolation";
    case Verdict::OutsideFreeSpace: return "OutsideFreeSpace";
  }
  return "?";
}

struct ComponentCount {
  int id = 0;
  int starts = 0;
  int targets = 0;
};

struct FeasibilityReport {
  std::vector<ComponentCount> components;
  bool separation_ok = true;
  double min_separation = std::numeric_limits<double>::infinity();
  Verdict verdict = Verdict::Feasible;
  std::vector<Point> outside;   // configurations with clearance below one
  std::vector<Point> boundary;  // configurations touching the free-space boundary
};

class SceneInfeasible : public Infeasible {
 public:
  explicit SceneInfeasible(FeasibilityReport r)
      : Infeasible("scene is not solvable: " + to_string(r.verdict)), report(std::move(r)) {}
  FeasibilityReport report;
};

class InternalAssertion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest distance between distinct configurations of S ∪ T. A start and a
/// target at the same point are one configuration; two starts (or two
/// targets) at the same point are distance 0 apart.
inline double min_separation(const std::vector<Point>& starts, const std::vector<Point>& targets) {
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](const std::vector<Point>& a, const std::vector<Point>& b, bool cross) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = cross ? 0 : i + 1; j < b.size(); ++j) {
        const double d = dist(a[i], b[j]);
        if (cross && d <= kCoincident) continue;
        best = std::min(best, d);
      }
  };
  scan(starts, starts, false);
  scan(targets, targets, false);
  scan(starts, targets, true);
  return best;
}

inline FeasibilityReport check_feasibility(const Scene& scene, const FreeSpace& fs) {
  FeasibilityReport r;
  for (const auto& c : fs.components) r.components.push_back({c.id, 0, 0});
  auto tally = [&](Point p, bool start) {
    const auto id = locate(fs, p);
    if (!id) {
      r.outside.push_back(p);
      return;
    }
    if (boundary_distance(fs.polygon, p) <= kRobotRadius + kEps) r.boundary.push_back(p);
    (start ? r.components[*id].starts : r.components[*id].targets)++;
  };
  for (Point s : scene.starts) tally(s, true);
  for (Point t : scene.targets) tally(t, false);
  r.min_separation = min_separation(scene.starts, scene.targets);
  r.separation_ok = r.min_separation >= kSeparation - kEps;
  bool counts_ok = scene.starts.size() == scene.targets.size();
  for (const auto& c : r.components) counts_ok = counts_ok && c.starts == c.targets;
  if (!r.outside.empty()) r.verdict = Verdict::OutsideFreeSpace;
  else if (!counts_ok) r.verdict = Verdict::CountMismatch;
  else if (!r.separation_ok) r.verdict = Verdict::SeparationViolation;
  return r;
}

inline FeasibilityReport check_feasibility(const Scene& scene) {
  return check_feasibility(scene, compute_free_space(scene.polygon, scene.name));
}

/// Everything built while planning one component.
struct ComponentPlan {
  int component = 0;
  MotionGraph graph;
  PebbleProblem problem;
  PebblePlan pebbles;
};

struct SolveResult {
  FreeSpace free_space;
  FeasibilityReport report;
  InterferenceForest forest;
  std::vector<ComponentPlan> components;  // in execution order
  MotionPlan plan;
};

/// Graph vertices of one component: its starts, then its targets, with a
/// target that coincides with a start folded into that start's vertex.
inline std::vector<GraphVertex> component_vertices(const FreeComponent& c) {
  std::vector<GraphVertex> v;
  for (Point s : c.starts) v.push_back({s, true, false});
  for (Point t : c.targets) {
    bool merged = false;
    for (auto& g : v)
      if (g.is_start && !g.is_target && dist(g.position, t) <= kCoincident) {
        g.is_target = merged = true;
        break;
      }
    if (!merged) v.push_back({t, false, true});
  }
  return v;
}

inline ComponentPlan plan_component(const FreeSpace& fs, int comp_id) {
  const FreeComponent& c = fs.components.at(comp_id);
  ComponentPlan cp;
  cp.component = comp_id;
  const auto vertices = component_vertices(c);
  cp.graph = build_motion_graph(fs, comp_id, vertices);
  cp.problem.vertex_count = static_cast<int>(vertices.size());
  for (const auto& e : cp.graph.edges) cp.problem.edges.push_back({e.u, e.v});
  for (int k = 0; k < cp.problem.vertex_count; ++k) {
    if (vertices[k].is_start) cp.problem.starts.push_back(k);
    if (vertices[k].is_target) cp.problem.targets.push_back(k);
  }
  cp.pebbles = solve(cp.problem);
  return cp;
}

inline SolveResult solve_detailed(const Scene& scene) {
  SolveResult out;
  out.free_space = compute_free_space(scene.polygon, scene.name);
  out.report = check_feasibility(scene, out.free_space);
  if (out.report.verdict != Verdict::Feasible) throw SceneInfeasible(out.report);
  FreeSpace& fs = out.free_space;
  assign_configurations(fs, scene.starts, scene.targets);
  try {
    out.forest = build_forest(find_interferences(fs, scene.starts, scene.targets),
                              static_cast<int>(fs.components.size()));
    out.plan.component_order = execution_order(out.forest);
    for (int id : out.plan.component_order) {
      ComponentPlan cp = plan_component(fs, id);
      const auto final_occ = replay(cp.problem, cp.pebbles);
      auto want = cp.problem.targets;
      std::sort(want.begin(), want.end());
      if (final_occ != want) throw InternalAssertion("pebble plan of component " + std::to_string(id) + " misses T");
      for (const auto& m : cp.pebbles.moves)
        for (std::size_t k = 0; k + 1 < m.via.size(); ++k) {
          const int a = m.via[k], b = m.via[k + 1];
          out.plan.moves.push_back({cp.graph.vertices[a].position, cp.graph.vertices[b].position, cp.graph.path(a, b)});
        }
      out.components.push_back(std::move(cp));
    }
  } catch (const SceneInfeasible&) {
    throw;
  } catch (const InternalAssertion&) {
    throw;
  } catch (const std::exception& e) {
    throw InternalAssertion(e.what());
  }
  return out;
}

inline MotionPlan solve(const Scene& scene) { return solve_detailed(scene).plan; }

}  // namespace discplan
