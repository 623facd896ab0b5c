// Unlabeled pebble motion on a connected graph: pebbles start on S and must
// end on T, one pebble moving at a time, never two on a vertex.
#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace discplan {

struct PebbleProblem {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> starts;
  std::vector<int> targets;

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [a, b] : edges) {
      if (a == b) continue;
      adj.at(a).push_back(b);
      adj.at(b).push_back(a);
    }
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
  }
};

struct PebbleMove {
  int from = 0;
  int to = 0;
  std::vector<int> via;  // from, intermediate vertices, to
};

struct PebblePlan {
  std::vector<PebbleMove> moves;

  std::size_t steps() const {
    std::size_t n = 0;
    for (const auto& m : moves) n += m.via.size() - 1;
    return n;
  }
};

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(std::size_t index, std::string reason)
      : std::runtime_error("illegal move " + std::to_string(index) + ": " + reason),
        index(index),
        reason(std::move(reason)) {}
  std::size_t index;
  std::string reason;
};

namespace detail {

inline bool connected(const std::vector<std::vector<int>>& adj) {
  if (adj.empty()) return true;
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) seen[v] = 1, ++count, stack.push_back(v);
  }
  return count == adj.size();
}

/// BFS over the live part of the tree from `src`; returns parents (-1 at
/// src, -2 unreached) and the visit order.
inline std::pair<std::vector<int>, std::vector<int>> tree_bfs(const std::vector<std::set<int>>& tree,
                                                              const std::vector<char>& alive, int src) {
  std::vector<int> parent(tree.size(), -2), order;
  std::vector<int> depth(tree.size(), 0);
  std::deque<int> q{src};
  parent[src] = -1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    order.push_back(u);
    for (int v : tree[u])
      if (alive[v] && parent[v] == -2) parent[v] = u, depth[v] = depth[u] + 1, q.push_back(v);
  }
  // Stable by depth then id, so the first match at a depth is the lowest id.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : a < b;
  });
  return {parent, order};
}

inline std::vector<int> path_to(const std::vector<int>& parent, int v) {
  std::vector<int> p;
  for (; v >= 0; v = parent[v]) p.push_back(v);
  return p;  // v ... src
}

}  // namespace detail

/// Phase algorithm on a BFS spanning tree: repeatedly retire a leaf, filling
/// target leaves with the nearest pebble and evacuating occupied non-target
/// leaves toward the nearest empty vertex.
inline PebblePlan solve(const PebbleProblem& problem) {
  const int n = problem.vertex_count;
  if (problem.starts.size() != problem.targets.size())
    throw Infeasible(std::to_string(problem.starts.size()) + " starts but " + std::to_string(problem.targets.size()) +
                     " targets");
  const auto adj = problem.adjacency();
  if (!detail::connected(adj)) throw Infeasible("graph is disconnected");
  std::vector<char> occupied(n, 0), is_target(n, 0);
  for (int s : problem.starts) {
    if (occupied.at(s)) throw Infeasible("two pebbles start on vertex " + std::to_string(s));
    occupied[s] = 1;
  }
  for (int t : problem.targets) {
    if (is_target.at(t)) throw Infeasible("vertex " + std::to_string(t) + " is a target twice");
    is_target[t] = 1;
  }
  PebblePlan plan;
  if (n == 0) return plan;

  std::vector<std::set<int>> tree(n);
  {
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : adj[u])
        if (!seen[v]) seen[v] = 1, tree[u].insert(v), tree[v].insert(u), q.push_back(v);
    }
  }
  std::vector<char> alive(n, 1);
  auto live_degree = [&](int v) {
    int d = 0;
    for (int w : tree[v]) d += alive[w];
    return d;
  };
  for (int remaining = n; remaining > 0; --remaining) {
    int leaf = -1;
    for (int pass = 0; pass < 2 && leaf < 0; ++pass)
      for (int v = 0; v < n && leaf < 0; ++v)
        if (alive[v] && live_degree(v) <= 1 && bool(is_target[v]) == (pass == 0)) leaf = v;
    if (is_target[leaf]) {
      if (!occupied[leaf]) {
        auto [parent, order] = detail::tree_bfs(tree, alive, leaf);
        int src = -1;
        for (int v : order)
          if (occupied[v]) {
            src = v;
            break;
          }
        if (src < 0) throw Infeasible("no pebble left for target " + std::to_string(leaf));
        plan.moves.push_back({src, leaf, detail::path_to(parent, src)});
        occupied[src] = 0;
        occupied[leaf] = 1;
      }
    } else if (occupied[leaf]) {
      auto [parent, order] = detail::tree_bfs(tree, alive, leaf);
      int w = -1;
      for (int v : order)
        if (!occupied[v]) {
          w = v;
          break;
        }
      if (w < 0) throw Infeasible("no free vertex to evacuate " + std::to_string(leaf));
      auto path = detail::path_to(parent, w);  // w ... leaf
      for (std::size_t i = 1; i < path.size(); ++i) {
        plan.moves.push_back({path[i], path[i - 1], {path[i], path[i - 1]}});
        occupied[path[i - 1]] = 1;
        occupied[path[i]] = 0;
      }
    }
    alive[leaf] = 0;
  }
  return plan;
}

/// Applies the plan unit step by unit step; returns the final occupancy as
/// a sorted vertex list.
inline std::vector<int> replay(const PebbleProblem& problem, const PebblePlan& plan) {
  const auto adj = problem.adjacency();
  std::vector<char> occupied(problem.vertex_count, 0);
  for (int s : problem.starts) occupied.at(s) = 1;
  auto is_edge = [&](int a, int b) {
    return a >= 0 && a < problem.vertex_count && std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  for (std::size_t i = 0; i < plan.moves.size(); ++i) {
    const auto& m = plan.moves[i];
    if (m.via.size() < 2 || m.via.front() != m.from || m.via.back() != m.to) throw IllegalMove(i, "non-edge");
    if (m.from < 0 || m.from >= problem.vertex_count || !occupied[m.from]) throw IllegalMove(i, "no-pebble-at-source");
    for (std::size_t k = 0; k + 1 < m.via.size(); ++k)
      if (!is_edge(m.via[k], m.via[k + 1])) throw IllegalMove(i, "non-edge");
    for (std::size_t k = 1; k + 1 < m.via.size(); ++k)
      if (occupied[m.via[k]] && m.via[k] != m.from) throw IllegalMove(i, "occupied-intermediate");
    if (m.to != m.from && occupied[m.to]) throw IllegalMove(i, "occupied-destination");
    occupied[m.from] = 0;
    occupied[m.to] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < problem.vertex_count; ++v)
    if (occupied[v]) out.push_back(v);
  return out;
}

}  // namespace discplan
