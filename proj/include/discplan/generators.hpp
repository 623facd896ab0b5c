// Instance generators: random rectilinear scenes, the two-robot corridor
// construction around the separation threshold, a dumbbell, and a long
// corridor that forces quadratically many pebble steps.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "discplan/free_space.hpp"
#include "discplan/scene.hpp"

namespace discplan {

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxGenerationAttempts = 10000;
/// Lower bound on the separation that guarantees solvability: 4*sqrt(2) - 2.
inline const double kSeparationLowerBound = 4.0 * std::sqrt(2.0) - 2.0;

/// mt19937_64 with distributions built from raw bits, so sequences do not
/// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

struct GenParams {
  std::uint64_t seed = 1;
  int n = 40;          // target polygon vertex count (random)
  int m = 4;           // robots
  double rho = 1.0;    // corridor: start separation is 2 + rho
  double width = 1.9;  // dumbbell corridor width; corridor kind uses its own default
  /// Random kind: chance that a configuration is drawn from the points whose
  /// collision disc reaches another component. Zero keeps plain sampling.
  double gap_bias = 0.0;
};

// ---- random rectilinear scenes -------------------------------------------

namespace detail {

struct Polyomino {
  int g = 0;
  std::vector<char> cell;  // g*g, row-major with row = y
  bool at(int i, int j) const { return i >= 0 && j >= 0 && i < g && j < g && cell[j * g + i]; }
};

/// Corners of the cell-union boundary: grid nodes whose four surrounding
/// cells hold an odd number of filled cells.
inline int corner_count(const Polyomino& p) {
  int n = 0;
  for (int j = 0; j <= p.g; ++j)
    for (int i = 0; i <= p.g; ++i) {
      const int k = p.at(i - 1, j - 1) + p.at(i, j - 1) + p.at(i - 1, j) + p.at(i, j);
      n += k % 2;
    }
  return n;
}

inline bool has_pinch(const Polyomino& p) {
  for (int j = 0; j <= p.g; ++j)
    for (int i = 0; i <= p.g; ++i) {
      const bool a = p.at(i - 1, j - 1), b = p.at(i, j - 1), c = p.at(i - 1, j), d = p.at(i, j);
      if ((a && d && !b && !c) || (b && c && !a && !d)) return true;
    }
  return false;
}

inline bool has_hole(const Polyomino& p) {
  const int G = p.g + 2;
  std::vector<char> seen(G * G, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    const int i = u % G, j = u / G;
    const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k], b = j + dj[k];
      if (a < 0 || b < 0 || a >= G || b >= G || seen[b * G + a] || p.at(a - 1, b - 1)) continue;
      seen[b * G + a] = 1;
      stack.push_back(b * G + a);
    }
  }
  for (int j = 0; j < p.g; ++j)
    for (int i = 0; i < p.g; ++i)
      if (!p.at(i, j) && !seen[(j + 1) * G + i + 1]) return true;
  return false;
}

/// Boundary of the cell union in grid coordinates, counter-clockwise, one
/// point per corner.
inline std::vector<std::pair<int, int>> trace_polyomino(const Polyomino& p) {
  std::map<std::pair<int, int>, std::pair<int, int>> next;
  for (int j = 0; j < p.g; ++j)
    for (int i = 0; i < p.g; ++i) {
      if (!p.at(i, j)) continue;
      if (!p.at(i, j - 1)) next[{i, j}] = {i + 1, j};
      if (!p.at(i + 1, j)) next[{i + 1, j}] = {i + 1, j + 1};
      if (!p.at(i, j + 1)) next[{i + 1, j + 1}] = {i, j + 1};
      if (!p.at(i - 1, j)) next[{i, j + 1}] = {i, j};
    }
  std::vector<std::pair<int, int>> walk;
  auto cur = next.begin()->first;
  do {
    walk.push_back(cur);
    cur = next.at(cur);
  } while (cur != walk.front());
  std::vector<std::pair<int, int>> corners;
  const std::size_t n = walk.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto [ax, ay] = walk[(k + n - 1) % n];
    const auto [bx, by] = walk[k];
    const auto [cx, cy] = walk[(k + 1) % n];
    if ((bx - ax) * (cy - by) - (by - ay) * (cx - bx) != 0) corners.push_back(walk[k]);
  }
  return corners;
}

inline Polyomino grow_polyomino(Rng& rng, int target_corners, int g) {
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Polyomino p{g, std::vector<char>(g * g, 0)};
    p.cell[(g / 2) * g + g / 2] = 1;
    int corners = 4;
    for (int step = 0; step < g * g * 4 && corners < target_corners; ++step) {
      std::vector<int> frontier;
      for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i)
          if (!p.at(i, j) && (p.at(i - 1, j) || p.at(i + 1, j) || p.at(i, j - 1) || p.at(i, j + 1)))
            frontier.push_back(j * g + i);
      if (frontier.empty()) break;
      const int c = frontier[rng.below(frontier.size())];
      p.cell[c] = 1;
      if (has_pinch(p) || has_hole(p)) {
        p.cell[c] = 0;
        continue;
      }
      corners = corner_count(p);
    }
    if (corners >= target_corners) return p;
  }
  throw GenerationFailed("could not grow a polyomino with " + std::to_string(target_corners) + " corners");
}

inline double axis_width(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.80) return rng.uniform(3.0, 8.0);
  if (u < 0.92) return rng.uniform(0.4, 1.8);
  return rng.uniform(2.2, 3.0);
}

/// True if two non-adjacent edges are within `band` of distance 2, where
/// offset curves of the erosion would become tangent.
inline bool near_critical_width(const Polygon& poly, double band = 0.1) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (std::abs(segment_segment_distance(poly.edge(i), poly.edge(j)) - 2.0) < band) return true;
    }
  return false;
}

/// A configuration is acceptable when its collision circle stays clear of
/// tangencies with the free-space boundary of every component and with the
/// collision circles already placed.
inline bool well_placed(const FreeSpace& fs, Point x, int home, const std::vector<Point>& placed) {
  const double clearance = boundary_distance(fs.polygon, x);
  if (clearance < 1.05 || std::abs(clearance - 3.0) < 0.05) return false;
  for (Point p : placed)
    if (dist(p, x) < 4.05) return false;
  for (const auto& c : fs.components) {
    if (c.id == home) continue;
    if (std::abs(distance_to_chain(c.outer(), x) - 2.0) <= 0.05) return false;
  }
  return true;
}

}  // namespace detail

/// Random rectilinear simple polygon with about `n` vertices and `m`
/// start/target pairs, each pair inside one free-space component.
inline Scene generate_random(const GenParams& gp) {
  Rng rng(gp.seed);
  const int g = std::max(6, static_cast<int>(std::ceil(std::sqrt(gp.n * 2.0))) + 2);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    const detail::Polyomino shape = detail::grow_polyomino(rng, gp.n, g);
    std::vector<double> wx(g), wy(g);
    for (auto& w : wx) w = detail::axis_width(rng);
    for (auto& w : wy) w = detail::axis_width(rng);
    const auto corners = detail::trace_polyomino(shape);
    for (double scale = 1.0; scale < 4.0; scale *= 1.25) {
      std::vector<double> X(g + 1, 0.0), Y(g + 1, 0.0);
      for (int i = 0; i < g; ++i) X[i + 1] = X[i] + wx[i] * scale, Y[i + 1] = Y[i] + wy[i] * scale;
      Polygon poly;
      for (auto [i, j] : corners) poly.vertices.push_back({X[i], Y[j]});
      if (detail::near_critical_width(poly)) continue;
      const FreeSpace fs = compute_free_space(poly);
      if (fs.components.empty()) continue;
      double xmin = X[0], xmax = X[g], ymin = Y[0], ymax = Y[g];
      Scene s;
      s.name = "random-" + std::to_string(gp.seed);
      s.seed = gp.seed;
      s.polygon = fs.polygon;
      std::vector<Point> placed;
      // Biased draw: a point within 2 of some other component's boundary.
      auto draw = [&]() {
        if (gp.gap_bias <= 0 || fs.components.size() < 2 || rng.uniform() >= gp.gap_bias)
          return Point{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
        for (int k = 0; k < 400; ++k) {
          const FreeComponent& c = fs.components[rng.below(fs.components.size())];
          const Chain& chain = c.outer();
          const Point q = point_at(chain.pieces[rng.below(chain.size())].piece, rng.uniform());
          const double r = 2.0 * std::sqrt(rng.uniform()), a = rng.uniform(0, kTwoPi);
          const Point x{q.x + r * std::cos(a), q.y + r * std::sin(a)};
          const auto home = locate(fs, x);
          if (home && *home != c.id && distance_to_chain(chain, x) < 2.0 - 0.05) return x;
        }
        return Point{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
      };
      bool ok = true;
      for (int r = 0; r < gp.m && ok; ++r) {
        ok = false;
        for (int tries = 0; tries < 2000 && !ok; ++tries) {
          const Point a = draw();
          const auto ca = locate(fs, a);
          if (!ca || !detail::well_placed(fs, a, *ca, placed)) continue;
          placed.push_back(a);
          for (int t2 = 0; t2 < 2000 && !ok; ++t2) {
            const Point b = draw();
            const auto cb = locate(fs, b);
            if (cb != ca || !detail::well_placed(fs, b, *cb, placed)) continue;
            placed.push_back(b);
            s.starts.push_back(a);
            s.targets.push_back(b);
            ok = true;
          }
          if (!ok) placed.pop_back();
        }
      }
      if (ok) return s;
    }
  }
  throw GenerationFailed("random scene: placement failed");
}

// ---- corridor construction ------------------------------------------------

struct CorridorScene {
  Scene scene;
  Point A, B, C, D, M;  // room floor corners, corridor mouth, tangent point of the second robot
  double separation = 0;
  std::vector<std::string> warnings;
};

/// Room of width 4 + rho with two robots resting in its lower corners, start
/// separation 2 + rho, and a corridor leaving the floor between them. The
/// corridor's left wall starts at B = A + (1 + rho/2, 0).
inline CorridorScene generate_corridor(double rho, double width = 2.02, std::uint64_t seed = 0) {
  if (!(rho > 0) || rho >= 2) throw GenerationFailed("corridor: rho must lie in (0, 2)");
  if (width < 2.0) throw GenerationFailed("corridor: width must be at least 2");
  CorridorScene cs;
  const double room_w = 4 + rho, room_h = 4, drop = 8, ch_w = 10, ch_h = 6;
  cs.A = {0, 0};
  cs.D = {room_w, 0};
  cs.B = {1 + rho / 2, 0};
  cs.C = {cs.B.x + width, 0};
  cs.M = {3 + rho, 0};
  if (cs.C.x > cs.D.x - 1e-9) throw GenerationFailed("corridor: mouth does not fit in the room floor");
  const double left = cs.B.x - (ch_w - width) / 2, right = cs.C.x + (ch_w - width) / 2;
  Scene& s = cs.scene;
  s.name = "corridor";
  s.seed = seed;
  s.polygon.vertices = {{left, -drop - ch_h}, {right, -drop - ch_h}, {right, -drop}, {cs.C.x, -drop}, cs.C,
                        cs.D,  {room_w, room_h},  {0, room_h},  cs.A,  cs.B,  {cs.B.x, -drop},  {left, -drop}};
  s.starts = {{1, 1}, {3 + rho, 1}};
  s.targets = {{left + 2, -drop - 3}, {right - 2, -drop - 3}};
  cs.separation = dist(s.starts[0], s.starts[1]);
  if (cs.separation < kSeparationLowerBound)
    cs.warnings.push_back("separation " + std::to_string(cs.separation) + " is below 4*sqrt(2)-2; the instance may be unsolvable");
  else if (cs.separation < 4.0)
    cs.warnings.push_back("separation " + std::to_string(cs.separation) + " is below 4; no plan is guaranteed");
  return cs;
}

// ---- dumbbell and long corridor -------------------------------------------

/// Two 6x6 bulbs joined by a horizontal corridor of the given width; the
/// start sits in the left bulb and the target in the right one.
inline Scene generate_dumbbell(double width, std::uint64_t seed = 0) {
  if (!(width > 0) || width >= 6) throw GenerationFailed("dumbbell: width must lie in (0, 6)");
  const double lo = 3 - width / 2, hi = 3 + width / 2;
  Scene s;
  s.name = "dumbbell";
  s.seed = seed;
  s.polygon.vertices = {{0, 0}, {6, 0}, {6, lo}, {10, lo}, {10, 0}, {16, 0}, {16, 6},
                        {10, 6}, {10, hi}, {6, hi}, {6, 6}, {0, 6}};
  s.starts = {{3, 3}};
  s.targets = {{13, 3}};
  return s;
}

/// Width-3 corridor with 2m evenly spaced configurations; starts occupy the
/// first half and targets the second.
inline Scene generate_path_worstcase(int m, std::uint64_t seed = 0) {
  if (m < 1) throw GenerationFailed("path-worstcase: m must be positive");
  constexpr double kGap = 4.5;
  Scene s;
  s.name = "path-worstcase";
  s.seed = seed;
  const double len = 3.0 + kGap * (2 * m - 1);
  s.polygon.vertices = {{0, 0}, {len, 0}, {len, 3}, {0, 3}};
  for (int k = 0; k < 2 * m; ++k) (k < m ? s.starts : s.targets).push_back({1.5 + kGap * k, 1.5});
  return s;
}

}  // namespace discplan
