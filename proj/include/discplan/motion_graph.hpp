// Motion graph of one free-space component: vertices are the start and
// target configurations, edges join configurations that a robot can travel
// between while every other robot is parked on some other configuration.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "discplan/free_space.hpp"

namespace discplan {

class NoHit : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class NoBoundaryContact : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class PathBlocked : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class DisconnectedGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphVertex {
  Point position;
  bool is_start = false;
  bool is_target = false;
};

enum class EdgeKind { HH, BB, HB };

struct PathRecipe {
  EdgeKind kind = EdgeKind::HH;
  std::vector<PathPiece> pieces;  // from edge.u to edge.v
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  int subregion = 0;
  PathRecipe recipe;
};

/// A point on a closed chain: piece index, parameter on the piece, and
/// arclength from the chain start.
struct ChainPos {
  std::size_t piece = 0;
  double t = 0.0;
  double s = 0.0;
};

struct SubregionDecoration {
  int subregion = 0;
  std::vector<int> B;
  std::vector<int> H;
  Chain gamma;
  std::map<int, Point> beta;
  std::map<int, ChainPos> beta_pos;
  /// Vertices whose beta lies on gamma, in clockwise order along it.
  std::vector<int> circular_list;
  /// Path from each listed vertex to its beta.
  std::map<int, std::vector<PathPiece>> lead;
};

struct MotionGraph {
  int component = 0;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
  /// Edge joining a and b, or nullptr.
  const GraphEdge* find_edge(int a, int b) const {
    for (const auto& e : edges)
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return &e;
    return nullptr;
  }
  /// Path pieces for travelling from a to b along their edge.
  std::vector<PathPiece> path(int a, int b) const {
    const GraphEdge* e = find_edge(a, b);
    if (!e) throw std::out_of_range("no motion-graph edge between " + std::to_string(a) + " and " + std::to_string(b));
    return e->u == a ? e->recipe.pieces : reversed(e->recipe.pieces);
  }
};

/// True if the closed collision disc of x meets the boundary of its component.
inline bool touches_boundary(const FreeComponent& fc, Point x) {
  return distance_to_chain(fc.outer(), x) <= kCollisionRadius;
}

/// B/H split per subregion: a vertex whose disc arcs lie on the outer chain
/// is a B-position there, one whose circle is a hole is an H-position.
inline std::vector<SubregionDecoration> classify_positions(const PuncturedComponent& pc) {
  std::vector<SubregionDecoration> out;
  for (const auto& sr : pc.subregions) {
    SubregionDecoration d;
    d.subregion = sr.id;
    d.gamma = sr.outer;
    std::set<int> b, h;
    for (const auto& c : sr.outer.pieces)
      if (c.tag >= 0) b.insert(c.tag);
    for (const auto& hole : sr.holes)
      for (const auto& c : hole.pieces)
        if (c.tag >= 0 && !b.count(c.tag)) h.insert(c.tag);
    d.B.assign(b.begin(), b.end());
    d.H.assign(h.begin(), h.end());
    out.push_back(std::move(d));
  }
  return out;
}

// ---- chain positions ------------------------------------------------------

inline std::vector<double> chain_offsets(const Chain& chain) {
  std::vector<double> off(chain.size() + 1, 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) off[i + 1] = off[i] + length(chain.pieces[i].piece);
  return off;
}

inline ChainPos chain_pos(const Chain& chain, std::size_t piece, double t) {
  const auto off = chain_offsets(chain);
  t = std::clamp(t, 0.0, 1.0);
  return {piece, t, off[piece] + t * length(chain.pieces[piece].piece)};
}

/// Position of the chain point nearest to q.
inline ChainPos project_onto_chain(const Chain& chain, Point q) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const double d = min_distance_piece_point(chain.pieces[i].piece, q);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  const PathPiece& p = chain.pieces[best].piece;
  return chain_pos(chain, best, param_of(p, closest_point_on_piece(p, q)));
}

/// The chain walked forward (in its own orientation) from a to b.
inline std::vector<PathPiece> chain_portion(const Chain& chain, ChainPos a, ChainPos b) {
  std::vector<PathPiece> out;
  auto push = [&out](const PathPiece& p, double t0, double t1) {
    if (t1 - t0 <= 1e-12) return;
    PathPiece sp = sub_piece(p, t0, t1);
    if (length(sp) > 1e-12) out.push_back(sp);
  };
  const std::size_t n = chain.size();
  if (a.piece == b.piece && a.t <= b.t) {
    push(chain.pieces[a.piece].piece, a.t, b.t);
    return out;
  }
  push(chain.pieces[a.piece].piece, a.t, 1.0);
  for (std::size_t i = (a.piece + 1) % n; i != b.piece; i = (i + 1) % n) push(chain.pieces[i].piece, 0.0, 1.0);
  push(chain.pieces[b.piece].piece, 0.0, b.t);
  return out;
}

// ---- B-positions ----------------------------------------------------------

/// Maximal runs of consecutive pieces of `tag` along the chain, as
/// (first piece, piece count).
inline std::vector<std::pair<std::size_t, std::size_t>> tag_runs(const Chain& chain, int tag) {
  const std::size_t n = chain.size();
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  bool all = n > 0;
  for (const auto& c : chain.pieces) all = all && c.tag == tag;
  if (all) return {{0, n}};
  for (std::size_t i = 0; i < n; ++i) {
    if (chain.pieces[i].tag != tag || chain.pieces[(i + n - 1) % n].tag == tag) continue;
    std::size_t k = 0;
    while (chain.pieces[(i + k) % n].tag == tag) ++k;
    runs.push_back({i, k});
  }
  return runs;
}

struct AngularInterval {
  double theta_start = 0.0;
  double signed_sweep = 0.0;
};

/// Angular intervals of the collision circle of vertex `tag` exposed on the
/// chain. A B-position has exactly one.
inline std::vector<AngularInterval> exposed_intervals(const Chain& chain, int tag) {
  std::vector<AngularInterval> out;
  for (auto [first, count] : tag_runs(chain, tag)) {
    AngularInterval iv;
    for (std::size_t k = 0; k < count; ++k) {
      const auto* a = std::get_if<Arc>(&chain.pieces[(first + k) % chain.size()].piece);
      if (!a) continue;
      if (k == 0) iv.theta_start = a->theta_start;
      iv.signed_sweep += a->signed_sweep();
    }
    out.push_back(iv);
  }
  return out;
}

/// Point at the angular midpoint of an exposed interval.
inline Point representative_point(Point center, const AngularInterval& iv) {
  return polar(center, kCollisionRadius, iv.theta_start + 0.5 * iv.signed_sweep);
}

/// Chain position of the midpoint of the tag's exposed run.
inline ChainPos beta_position(const Chain& chain, int tag) {
  const auto runs = tag_runs(chain, tag);
  if (runs.empty()) throw NoBoundaryContact("vertex " + std::to_string(tag) + " has no arc on the subregion boundary");
  auto [first, count] = runs.front();
  const std::size_t n = chain.size();
  double total = 0;
  for (std::size_t k = 0; k < count; ++k) total += length(chain.pieces[(first + k) % n].piece);
  double half = 0.5 * total;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = (first + k) % n;
    const double len = length(chain.pieces[i].piece);
    if (half <= len || k + 1 == count) return chain_pos(chain, i, len > 0 ? half / len : 0.0);
    half -= len;
  }
  return chain_pos(chain, first, 0.0);
}

// ---- curves inside a collision region -------------------------------------

/// Polyline from x to `target` inside D_2(x) with clearance at least one from
/// the polygon: a shortest path in a visibility graph whose nodes sample the
/// collision circle and circumscribe the unit circles of nearby reflex
/// vertices.
inline std::vector<PathPiece> delta_curve(const Polygon& poly, Point x, Point target) {
  const double reach = kCollisionRadius + kRobotRadius + 1e-6;
  std::vector<Segment> walls;
  std::vector<Point> reflex;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Segment e = poly.edge(i);
    if (distance_point_segment(x, e) <= reach) walls.push_back(e);
    if (is_reflex(poly, i) && dist(poly[i], x) <= reach) reflex.push_back(poly[i]);
  }
  auto clear_pt = [&](Point p) {
    for (const auto& w : walls)
      if (distance_point_segment(p, w) < kRobotRadius - kEps) return false;
    return true;
  };
  auto clear_seg = [&](Point a, Point b) {
    const Segment s{a, b};
    for (const auto& w : walls)
      if (segment_segment_distance(s, w) < kRobotRadius - kEps) return false;
    return true;
  };
  if (clear_seg(x, target)) return {Segment{x, target}};

  for (int K : {64, 256}) {
    std::vector<Point> nodes{x, target};
    const double r_poly = 1.0 / std::cos(kPi / K) + 1e-6;
    for (int k = 0; k < K; ++k) nodes.push_back(polar(x, kCollisionRadius, kTwoPi * k / K));
    for (Point v : reflex) {
      const double base = std::atan2(target.y - v.y, target.x - v.x);
      for (int k = 0; k < K; ++k) nodes.push_back(polar(v, r_poly, base + kTwoPi * k / K));
      for (Point q : intersect_circle_circle(x, kCollisionRadius, v, r_poly)) nodes.push_back(q);
    }
    std::erase_if(nodes, [&](Point p) {
      return !(p == x || p == target) && (dist(p, x) > kCollisionRadius + 1e-12 || !clear_pt(p));
    });
    const std::size_t n = nodes.size();
    std::vector<double> d(n, std::numeric_limits<double>::infinity());
    std::vector<int> prev(n, -1);
    std::vector<char> done(n, 0);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[0] = 0;
    pq.push({0, 0});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      if (u == 1) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        const double nd = du + dist(nodes[u], nodes[v]);
        if (nd >= d[v] || !clear_seg(nodes[u], nodes[v])) continue;
        d[v] = nd;
        prev[v] = static_cast<int>(u);
        pq.push({nd, v});
      }
    }
    if (prev[1] < 0) continue;
    std::vector<Point> pts;
    for (int v = 1; v >= 0; v = prev[v]) pts.push_back(nodes[v]);
    std::reverse(pts.begin(), pts.end());
    std::vector<PathPiece> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back(Segment{pts[i], pts[i + 1]});
    return out;
  }
  throw PathBlocked("no clear curve inside the collision region of (" + std::to_string(x.x) + ", " +
                    std::to_string(x.y) + ")");
}

// ---- H-positions ----------------------------------------------------------

struct RayHit {
  Point c;
  int tag = kFreeBoundaryTag;  // owner vertex of the hit circle, or free boundary
  bool on_gamma = false;
  ChainPos pos;                // valid when on_gamma
};

/// First point above the collision circle of vertex `self` (centred at x)
/// where the upward vertical ray meets the subregion boundary.
inline RayHit ray_shoot_up(const Subregion& sr, Point x, int self) {
  const double y0 = x.y + kCollisionRadius;
  double top = sr.outer.box.ymax;
  for (const auto& h : sr.holes) top = std::max(top, h.box.ymax);
  const Segment ray{{x.x, y0 - 1e-9}, {x.x, top + 1.0}};
  std::optional<RayHit> best;
  auto scan = [&](const Chain& ch, bool is_gamma) {
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const Curve& cv = ch.pieces[i];
      if (cv.tag == self) continue;
      const BoundingBox b = bounding_box(cv.piece);
      if (x.x < b.xmin - 1e-9 || x.x > b.xmax + 1e-9) continue;
      for (Point q : intersect_pieces(ray, cv.piece)) {
        if (q.y < y0 - 1e-7) continue;
        if (best && q.y >= best->c.y - 1e-12) continue;
        RayHit hit{q, cv.tag, is_gamma, {}};
        if (is_gamma) hit.pos = chain_pos(ch, i, param_of(cv.piece, q));
        best = hit;
      }
    }
  };
  scan(sr.outer, true);
  for (const auto& h : sr.holes) scan(h, false);
  if (!best) throw NoHit("upward ray from (" + std::to_string(x.x) + ", " + std::to_string(x.y) + ") hits nothing");
  best->c.x = x.x;
  return *best;
}

// ---- graph construction ---------------------------------------------------

inline void add_edge(MotionGraph& g, int a, int b, int subregion, EdgeKind kind, std::vector<PathPiece> pieces) {
  if (a == b || g.find_edge(a, b)) return;
  if (a > b) {
    std::swap(a, b);
    pieces = reversed(pieces);
  }
  g.edges.push_back({a, b, subregion, {kind, std::move(pieces)}});
}

inline std::vector<PathPiece> concat(std::initializer_list<std::vector<PathPiece>> parts) {
  std::vector<PathPiece> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Motion graph of component `pc.parent`; `vertices[k]` is the configuration
/// whose collision disc carries tag k in the punctured component.
inline MotionGraph build_motion_graph(const FreeSpace& fs, const PuncturedComponent& pc,
                                      std::vector<GraphVertex> vertices,
                                      std::vector<SubregionDecoration>* decorations_out = nullptr) {
  MotionGraph g;
  g.component = pc.parent;
  g.vertices = std::move(vertices);
  const Polygon& poly = fs.polygon;
  auto decorations = classify_positions(pc);
  auto pos = [&](int k) { return g.vertices.at(k).position; };

  for (auto& d : decorations) {
    const Subregion& sr = pc.subregions[d.subregion];
    const Chain& gamma = sr.outer;
    std::set<int> hset(d.H.begin(), d.H.end());
    for (int b : d.B) {
      const ChainPos p = beta_position(gamma, b);
      d.beta_pos[b] = p;
      d.beta[b] = point_at(gamma.pieces[p.piece].piece, p.t);
      d.lead[b] = delta_curve(poly, pos(b), d.beta[b]);
    }
    for (int h : d.H) {
      const RayHit hit = ray_shoot_up(sr, pos(h), h);
      const std::vector<PathPiece> up{Segment{pos(h), hit.c}};
      if (hit.tag == kFreeBoundaryTag) {
        d.beta[h] = hit.c;
        d.beta_pos[h] = hit.pos;
        d.lead[h] = up;
      } else if (hset.count(hit.tag)) {
        add_edge(g, h, hit.tag, sr.id, EdgeKind::HH, concat({up, {Segment{hit.c, pos(hit.tag)}}}));
      } else {
        add_edge(g, h, hit.tag, sr.id, EdgeKind::HB, concat({up, reversed(delta_curve(poly, pos(hit.tag), hit.c))}));
      }
    }
    std::vector<int> order;
    for (const auto& [k, p] : d.beta_pos) order.push_back(k);
    // Clockwise along a counter-clockwise chain: decreasing arclength.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (d.beta_pos[a].s != d.beta_pos[b].s) return d.beta_pos[a].s > d.beta_pos[b].s;
      return a < b;
    });
    d.circular_list = order;
    const std::size_t L = order.size();
    if (L < 2) continue;
    for (std::size_t i = 0; i < (L == 2 ? 1 : L); ++i) {
      const int a = order[i], b = order[(i + 1) % L];
      const bool ha = hset.count(a), hb = hset.count(b);
      const EdgeKind kind = ha && hb ? EdgeKind::HH : (!ha && !hb ? EdgeKind::BB : EdgeKind::HB);
      auto portion = reversed(chain_portion(gamma, d.beta_pos[b], d.beta_pos[a]));
      add_edge(g, a, b, sr.id, kind, concat({d.lead[a], portion, reversed(d.lead[b])}));
    }
  }

  if (!g.vertices.empty()) {
    const auto adj = g.adjacency();
    std::vector<char> seen(g.vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) seen[v] = 1, stack.push_back(v);
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k])
        throw DisconnectedGraph("motion graph of component " + std::to_string(pc.parent) + " misses vertex " +
                                std::to_string(k));
  }
  if (decorations_out) *decorations_out = std::move(decorations);
  return g;
}

/// Convenience: puncture component `comp_id` at `vertices` and build its graph.
inline MotionGraph build_motion_graph(const FreeSpace& fs, int comp_id, const std::vector<GraphVertex>& vertices,
                                      std::vector<SubregionDecoration>* decorations_out = nullptr,
                                      PuncturedComponent* punctured_out = nullptr) {
  std::vector<Point> pts;
  for (const auto& v : vertices) pts.push_back(v.position);
  PuncturedComponent pc = puncture(fs, comp_id, pts);
  MotionGraph g = build_motion_graph(fs, pc, vertices, decorations_out);
  if (punctured_out) *punctured_out = std::move(pc);
  return g;
}

}  // namespace discplan
