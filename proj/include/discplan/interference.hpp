// Cross-component interference between start/target configurations and the
// directed-interference forest that fixes the order in which per-component
// plans run.
#pragma once

#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "discplan/free_space.hpp"

namespace discplan {

enum class ConfigKind { Start, Target };

/// `config` lives in component `home` and its collision disc reaches into
/// component `affected`.
struct InterferenceRecord {
  Point config;
  int home = 0;
  int affected = 0;
  ConfigKind kind = ConfigKind::Start;
};

struct ForestEdge {
  int from = 0;
  int to = 0;
  InterferenceRecord witness;
};

struct InterferenceForest {
  std::vector<int> nodes;
  std::vector<ForestEdge> edges;

  std::vector<int> out_neighbors(int i) const {
    std::vector<int> r;
    for (const auto& e : edges)
      if (e.from == i) r.push_back(e.to);
    return r;
  }
  std::vector<int> in_neighbors(int i) const {
    std::vector<int> r;
    for (const auto& e : edges)
      if (e.to == i) r.push_back(e.from);
    return r;
  }
};

class NotAForest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// D_2(x) ∩ F_j ≠ ∅ for x outside F_j: the open disc reaches F_j exactly
/// when x is closer than 2 to F_j's boundary.
inline bool disc_reaches(const FreeComponent& comp, Point x) {
  const BoundingBox& b = comp.outer().box;
  const double dx = std::max({b.xmin - x.x, 0.0, x.x - b.xmax});
  const double dy = std::max({b.ymin - x.y, 0.0, x.y - b.ymax});
  if (std::hypot(dx, dy) >= kCollisionRadius) return false;
  return distance_to_chain(comp.outer(), x) < kCollisionRadius - kEps;
}

inline std::vector<InterferenceRecord> find_interferences(const FreeSpace& fs, const std::vector<Point>& starts,
                                                          const std::vector<Point>& targets) {
  std::vector<InterferenceRecord> out;
  auto scan = [&](Point x, ConfigKind kind) {
    const auto home = locate(fs, x);
    if (!home) throw OutsideFreeSpace(x);
    for (const auto& comp : fs.components) {
      if (comp.id == *home) continue;
      if (disc_reaches(comp, x)) out.push_back({x, *home, comp.id, kind});
    }
  };
  for (Point s : starts) scan(s, ConfigKind::Start);
  for (Point t : targets) scan(t, ConfigKind::Target);
  return out;
}

/// Edge (i, j) for a start in I_(i,j) or a target in I_(j,i). Parallel
/// duplicates collapse onto the first witness; an antiparallel pair or an
/// undirected cycle throws NotAForest.
inline InterferenceForest build_forest(const std::vector<InterferenceRecord>& records,
                                       const std::vector<int>& nodes) {
  InterferenceForest forest;
  forest.nodes = nodes;
  std::set<std::pair<int, int>> seen;
  for (const auto& r : records) {
    const int from = r.kind == ConfigKind::Start ? r.home : r.affected;
    const int to = r.kind == ConfigKind::Start ? r.affected : r.home;
    if (seen.count({to, from}))
      throw NotAForest("components " + std::to_string(from) + " and " + std::to_string(to) +
                       " interfere in both directions");
    if (!seen.insert({from, to}).second) continue;
    forest.edges.push_back({from, to, r});
  }
  std::map<int, int> parent;
  for (int v : nodes) parent[v] = v;
  auto find = [&](int v) {
    while (parent.at(v) != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : forest.edges) {
    const int a = find(e.from), b = find(e.to);
    if (a == b) throw NotAForest("interference edges form a cycle through component " + std::to_string(e.from));
    parent[a] = b;
  }
  return forest;
}

inline InterferenceForest build_forest(const std::vector<InterferenceRecord>& records, int component_count) {
  std::vector<int> nodes(component_count);
  std::iota(nodes.begin(), nodes.end(), 0);
  return build_forest(records, nodes);
}

/// Topological order of the forest's nodes, smallest id first among ready
/// nodes.
inline std::vector<int> execution_order(const InterferenceForest& forest) {
  std::map<int, int> indeg;
  for (int v : forest.nodes) indeg[v] = 0;
  for (const auto& e : forest.edges) ++indeg.at(e.to);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push(v);
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& e : forest.edges)
      if (e.from == v && --indeg[e.to] == 0) ready.push(e.to);
  }
  if (order.size() != forest.nodes.size()) throw NotAForest("interference graph has a directed cycle");
  return order;
}

}  // namespace discplan
