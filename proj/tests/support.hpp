// Shared helpers for the test suites: fixture loading and grid-based
// oracles built on the validator's flood fill.
#pragma once

#include <string>
#include <vector>

#include "discplan/scene_io.hpp"
#include "discplan/validator.hpp"

namespace testsupport {

inline discplan::Scene fixture(const std::string& name) {
  return discplan::load_scene(std::string(DISCPLAN_FIXTURES) + "/" + name + ".json");
}

/// Grid label of the free cell nearest to p, searching a few cells around it.
inline int label_around(const discplan::GridLabels& g, discplan::Point p, int reach = 3) {
  const int ci = static_cast<int>(std::lround((p.x - g.x0) / g.resolution));
  const int cj = static_cast<int>(std::lround((p.y - g.y0) / g.resolution));
  int best = -1;
  double bd = 1e300;
  for (int j = cj - reach; j <= cj + reach; ++j)
    for (int i = ci - reach; i <= ci + reach; ++i) {
      if (i < 0 || j < 0 || i >= g.nx || j >= g.ny || g.at(i, j) < 0) continue;
      const double d = discplan::dist(g.point(i, j), p);
      if (d < bd) bd = d, best = g.at(i, j);
    }
  return best;
}

/// Number of 4-connected pieces of the grid cells that carry `label` and lie
/// within `radius` of `center`; pieces smaller than `min_cells` are ignored
/// as discretization debris.
inline int pieces_in_disc(const discplan::GridLabels& g, int label, discplan::Point center, double radius,
                          std::size_t min_cells = 1) {
  const int i0 = std::max(0, static_cast<int>(std::floor((center.x - radius - g.x0) / g.resolution)));
  const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((center.x + radius - g.x0) / g.resolution)));
  const int j0 = std::max(0, static_cast<int>(std::floor((center.y - radius - g.y0) / g.resolution)));
  const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((center.y + radius - g.y0) / g.resolution)));
  if (i1 < i0 || j1 < j0) return 0;
  const int w = i1 - i0 + 1, h = j1 - j0 + 1;
  std::vector<char> in(static_cast<std::size_t>(w) * h, 0), seen(in.size(), 0);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i)
      in[j * w + i] = g.at(i0 + i, j0 + j) == label && discplan::dist(g.point(i0 + i, j0 + j), center) <= radius;
  int pieces = 0;
  std::vector<int> stack;
  for (int s = 0; s < w * h; ++s) {
    if (!in[s] || seen[s]) continue;
    std::size_t count = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++count;
      const int i = u % w, j = u / w;
      const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[1] < 0 || q[0] >= w || q[1] >= h) continue;
        const int v = q[1] * w + q[0];
        if (in[v] && !seen[v]) seen[v] = 1, stack.push_back(v);
      }
    }
    if (count >= min_cells) ++pieces;
  }
  return pieces;
}

}  // namespace testsupport
