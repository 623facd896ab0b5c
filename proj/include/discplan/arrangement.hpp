// Boundary extraction for regions bounded by segments and circular arcs.
//
// Given candidate curves that contain the boundary of a region, and a
// membership predicate for that region, `trace_region_boundary` splits the
// curves at their mutual intersections, keeps the pieces that separate the
// region from its complement, orients them with the region on the left and
// links them into closed chains. Outer boundaries come out CCW (positive
// area), holes CW.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "discplan/geometry.hpp"

namespace discplan {

/// Vertex snapping radius used when linking split pieces.
inline constexpr double kSnap = 1e-7;

class ArrangementError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A piece together with the id of the object that produced it.
struct Curve {
  PathPiece piece;
  int tag = -1;
};

struct Chain {
  std::vector<Curve> pieces;
  double area = 0.0;  // signed; > 0 for CCW outer boundaries
  BoundingBox box;

  std::size_t size() const { return pieces.size(); }
};

/// Shoelace term: integral of (x dy - y dx)/2 along the piece.
inline double area_term(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return 0.5 * cross(s->a, s->b);
  const Arc& a = std::get<Arc>(p);
  const double phi = a.signed_sweep();
  return 0.5 * cross(a.start(), a.end()) + 0.5 * a.radius * a.radius * (phi - std::sin(phi));
}

/// Change of the direction angle of (q - p) as q runs along the piece.
inline double winding_angle(const PathPiece& piece, Point p) {
  auto chord = [&](Point a, Point b) {
    const Point u = a - p, v = b - p;
    return std::atan2(cross(u, v), dot(u, v));
  };
  if (const auto* s = std::get_if<Segment>(&piece)) return chord(s->a, s->b);
  const Arc& arc = std::get<Arc>(piece);
  const int parts = std::max(1, static_cast<int>(std::ceil(arc.sweep() / (kPi / 2))));
  const double step = arc.signed_sweep() / parts;
  const double sign = arc.orientation == Orientation::CCW ? 1.0 : -1.0;
  const bool inside_circle = dist(p, arc.center) < arc.radius;
  double total = 0;
  for (int k = 0; k < parts; ++k) {
    const Point a = arc.at_angle(arc.theta_start + k * step);
    const Point b = arc.at_angle(arc.theta_start + (k + 1) * step);
    total += chord(a, b);
    if (inside_circle) {
      const double side_p = cross(b - a, p - a);
      const double side_c = cross(b - a, arc.center - a);
      if (side_p * side_c < 0) total += sign * kTwoPi;
    }
  }
  return total;
}

inline int winding_number(const Chain& chain, Point p) {
  double total = 0;
  for (const Curve& c : chain.pieces) total += winding_angle(c.piece, p);
  return static_cast<int>(std::lround(total / kTwoPi));
}

inline bool box_contains(const BoundingBox& b, Point p, double slack = kSnap) {
  return p.x >= b.xmin - slack && p.x <= b.xmax + slack && p.y >= b.ymin - slack && p.y <= b.ymax + slack;
}

/// True if p lies in the region enclosed by the (outer) chain.
inline bool encloses(const Chain& chain, Point p) {
  return box_contains(chain.box, p) && winding_number(chain, p) != 0;
}

inline double distance_to_chain(const Chain& chain, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Curve& c : chain.pieces) best = std::min(best, min_distance_piece_point(c.piece, p));
  return best;
}

inline double chain_length(const Chain& chain) {
  double l = 0;
  for (const Curve& c : chain.pieces) l += length(c.piece);
  return l;
}

inline void finalize_chain(Chain& chain) {
  chain.area = 0;
  BoundingBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Curve& c : chain.pieces) {
    chain.area += area_term(c.piece);
    const BoundingBox b = bounding_box(c.piece);
    box.xmin = std::min(box.xmin, b.xmin);
    box.ymin = std::min(box.ymin, b.ymin);
    box.xmax = std::max(box.xmax, b.xmax);
    box.ymax = std::max(box.ymax, b.ymax);
  }
  chain.box = box;
}

namespace detail {

class VertexPool {
 public:
  int find_or_add(Point p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / kCell));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / kCell));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second)
          if (dist(points_[id], p) <= kSnap) return id;
      }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    cells_[key(cx, cy)].push_back(id);
    return id;
  }
  std::size_t size() const { return points_.size(); }

 private:
  static constexpr double kCell = 1e-5;
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(y);
  }
  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct HalfPiece {
  PathPiece piece;
  int tag;
  int from;
  int to;
};

// Unit direction from the piece's start toward a point a short way along it.
inline Point departure(const PathPiece& p) {
  const double len = length(p);
  const double t = std::min(0.5, 1e-4 / std::max(len, 1e-300));
  return unit(point_at(p, t) - start_point(p));
}

inline Point arrival_back(const PathPiece& p) {
  const double len = length(p);
  const double t = std::min(0.5, 1e-4 / std::max(len, 1e-300));
  return unit(point_at(p, 1.0 - t) - end_point(p));
}

inline double clockwise_angle(Point from, Point to) {
  double cw = -std::atan2(cross(from, to), dot(from, to));
  if (cw <= 1e-15) cw += kTwoPi;
  return cw;
}

}  // namespace detail

/// Splits, classifies and links `curves` into the oriented boundary chains of
/// the region described by `inside`. `probe` is the sideways offset used to
/// test which side of a piece belongs to the region.
inline std::vector<Chain> trace_region_boundary(std::span<const Curve> curves,
                                                const std::function<bool(Point)>& inside,
                                                double probe = 1e-6) {
  const std::size_t n = curves.size();
  std::vector<BoundingBox> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = bounding_box(curves[i].piece);

  std::vector<std::vector<double>> params(n, std::vector<double>{0.0, 1.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!boxes[i].overlaps(boxes[j], kSnap)) continue;
      for (Point x : intersect_pieces(curves[i].piece, curves[j].piece)) {
        params[i].push_back(param_of(curves[i].piece, x));
        params[j].push_back(param_of(curves[j].piece, x));
      }
    }
  }
  // Endpoints lying on other curves (T-junctions, overlaps, co-circular arcs).
  for (std::size_t i = 0; i < n; ++i) {
    for (Point e : {start_point(curves[i].piece), end_point(curves[i].piece)}) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !box_contains(boxes[j], e, kSnap)) continue;
        if (min_distance_piece_point(curves[j].piece, e) <= kSnap) params[j].push_back(param_of(curves[j].piece, e));
      }
    }
  }

  detail::VertexPool pool;
  std::vector<detail::HalfPiece> halves;
  std::unordered_map<std::uint64_t, std::vector<int>> by_ends;
  for (std::size_t i = 0; i < n; ++i) {
    auto& ps = params[i];
    std::sort(ps.begin(), ps.end());
    const PathPiece& whole = curves[i].piece;
    const double len = length(whole);
    std::vector<double> cuts{0.0};
    for (double t : ps) {
      if (t <= cuts.back()) continue;
      if ((t - cuts.back()) * len > kSnap) cuts.push_back(t);
    }
    if (cuts.back() < 1.0) {
      if (cuts.size() > 1 && (1.0 - cuts.back()) * len <= kSnap) cuts.back() = 1.0;
      else cuts.push_back(1.0);
    }
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      PathPiece sub = sub_piece(whole, cuts[k], cuts[k + 1]);
      const int u = pool.find_or_add(start_point(sub));
      const int v = pool.find_or_add(end_point(sub));
      if (u == v && length(sub) < 10 * kSnap) continue;
      const Point mid = point_at(sub, 0.5);
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | static_cast<std::uint32_t>(std::max(u, v));
      bool duplicate = false;
      for (int other : by_ends[key])
        if (dist(point_at(halves[other].piece, 0.5), mid) <= 1e-6) duplicate = true;
      if (duplicate) continue;
      by_ends[key].push_back(static_cast<int>(halves.size()));
      halves.push_back({std::move(sub), curves[i].tag, u, v});
    }
  }

  // Keep separating pieces, oriented with the region on the left.
  std::vector<detail::HalfPiece> kept;
  for (auto& h : halves) {
    const Point mid = point_at(h.piece, 0.5);
    const Point left = perp(tangent_at(h.piece, 0.5));
    const bool in_left = inside(mid + left * probe);
    const bool in_right = inside(mid - left * probe);
    if (in_left == in_right) continue;
    if (in_right) {
      h.piece = reversed(h.piece);
      std::swap(h.from, h.to);
    }
    kept.push_back(std::move(h));
  }

  std::vector<std::vector<int>> outgoing(pool.size());
  std::vector<int> indeg(pool.size(), 0);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    outgoing[kept[k].from].push_back(static_cast<int>(k));
    ++indeg[kept[k].to];
  }
  for (std::size_t v = 0; v < pool.size(); ++v)
    if (static_cast<int>(outgoing[v].size()) != indeg[v])
      throw ArrangementError("unbalanced boundary vertex while tracing region");

  std::vector<char> used(kept.size(), 0);
  std::vector<Chain> chains;
  for (std::size_t start = 0; start < kept.size(); ++start) {
    if (used[start]) continue;
    Chain chain;
    int cur = static_cast<int>(start);
    for (std::size_t guard = 0;; ++guard) {
      if (guard > kept.size()) throw ArrangementError("boundary chain does not close");
      used[cur] = 1;
      chain.pieces.push_back({kept[cur].piece, kept[cur].tag});
      const Point back = detail::arrival_back(kept[cur].piece);
      int best = -1;
      double best_angle = 0;
      for (int cand : outgoing[kept[cur].to]) {
        const double a = detail::clockwise_angle(back, detail::departure(kept[cand].piece));
        if (best < 0 || a < best_angle) {
          best = cand;
          best_angle = a;
        }
      }
      if (best == static_cast<int>(start)) break;
      if (best < 0 || used[best]) throw ArrangementError("boundary chain revisits a piece");
      cur = best;
    }
    finalize_chain(chain);
    chains.push_back(std::move(chain));
  }
  return chains;
}

/// An outer boundary with the hole chains it encloses.
struct Face {
  Chain outer;
  std::vector<Chain> holes;
};

/// Pairs every CW hole chain with the smallest CCW chain enclosing it.
inline std::vector<Face> group_faces(std::vector<Chain> chains) {
  std::vector<Face> faces;
  std::vector<Chain> holes;
  for (auto& c : chains) {
    if (c.area > 0) faces.push_back({std::move(c), {}});
    else holes.push_back(std::move(c));
  }
  for (auto& h : holes) {
    const Point probe = point_at(h.pieces.front().piece, 0.5);
    int owner = -1;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!encloses(faces[f].outer, probe)) continue;
      if (owner < 0 || faces[f].outer.area < faces[owner].outer.area) owner = static_cast<int>(f);
    }
    if (owner < 0) throw ArrangementError("hole chain without an enclosing boundary");
    faces[owner].holes.push_back(std::move(h));
  }
  return faces;
}

}  // namespace discplan
