// Planar primitives shared by every stage of the planner: points, segments,
// circular arcs, simple polygons, and the intersection / distance routines
// built on them. All incidence decisions go through `compare()` with the
// global tolerance `kEps`.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace discplan {

inline constexpr double kEps = 1e-9;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Three-way comparison with tolerance: -1 if a < b - tol, +1 if a > b + tol,
/// 0 otherwise.
inline int compare(double a, double b, double tol = kEps) {
  if (a < b - tol) return -1;
  if (a > b + tol) return 1;
  return 0;
}

inline bool near_zero(double v, double tol = kEps) { return compare(v, 0.0, tol) == 0; }

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoincidentCircles : public GeometryError {
 public:
  CoincidentCircles() : GeometryError("coincident circles have infinitely many intersections") {}
};

class DegeneratePolygon : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point unit(Point a) {
  const double n = norm(a);
  return n > 0 ? a / n : Point{};
}
inline Point polar(Point c, double r, double theta) {
  return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)};
}
inline bool approx_equal(Point a, Point b, double tol = kEps) { return dist(a, b) <= tol; }

/// Maps an angle to [0, 2pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

struct Segment {
  Point a;
  Point b;
  double length() const { return dist(a, b); }
};

enum class Orientation { CCW, CW };

/// Circular arc parameterized by angle. `theta_end - theta_start` is the
/// signed sweep: positive for CCW, negative for CW, magnitude in (0, 2pi].
struct Arc {
  Point center;
  double radius = 1.0;
  double theta_start = 0.0;
  double theta_end = kTwoPi;
  Orientation orientation = Orientation::CCW;

  double signed_sweep() const { return theta_end - theta_start; }
  double sweep() const { return std::abs(theta_end - theta_start); }
  double length() const { return radius * sweep(); }
  bool full_circle() const { return sweep() >= kTwoPi - 1e-12; }
  Point at_angle(double theta) const { return polar(center, radius, theta); }
  Point start() const { return at_angle(theta_start); }
  Point end() const { return at_angle(theta_end); }
  Point at(double t) const { return at_angle(theta_start + t * signed_sweep()); }
};

inline Arc make_arc(Point center, double radius, double theta_start, double signed_sweep) {
  if (!(radius > 0)) throw GeometryError("arc radius must be positive");
  const double s = std::clamp(signed_sweep, -kTwoPi, kTwoPi);
  if (s == 0) throw GeometryError("arc sweep must be nonzero");
  return Arc{center, radius, theta_start, theta_start + s, s > 0 ? Orientation::CCW : Orientation::CW};
}

inline Arc full_circle(Point center, double radius, double theta_start = -kPi / 2) {
  return make_arc(center, radius, theta_start, kTwoPi);
}

/// Offset of `theta` from the arc start, measured in the arc's direction,
/// in [0, 2pi).
inline double arc_offset(const Arc& arc, double theta) {
  return arc.orientation == Orientation::CCW ? wrap_angle(theta - arc.theta_start)
                                             : wrap_angle(arc.theta_start - theta);
}

/// True if the direction `theta` lies on the arc, with an angular slack that
/// corresponds to `tol` workspace units on the circle.
inline bool arc_contains_angle(const Arc& arc, double theta, double tol = kEps) {
  if (arc.full_circle()) return true;
  const double slack = tol / arc.radius;
  const double off = arc_offset(arc, theta);
  return off <= arc.sweep() + slack || off >= kTwoPi - slack;
}

struct Polygon {
  std::vector<Point> vertices;  // CCW, no closing duplicate

  std::size_t size() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  Segment edge(std::size_t i) const { return {vertices[i], vertices[(i + 1) % vertices.size()]}; }
};

using PathPiece = std::variant<Segment, Arc>;

inline bool is_arc(const PathPiece& p) { return std::holds_alternative<Arc>(p); }


// ---------------------------------------------------------------------------
// Path pieces

inline Point start_point(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->a;
  return std::get<Arc>(p).start();
}

inline Point end_point(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->b;
  return std::get<Arc>(p).end();
}

inline double length(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->length();
  return std::get<Arc>(p).length();
}

inline Point point_at(const PathPiece& p, double t) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->a + (s->b - s->a) * t;
  return std::get<Arc>(p).at(t);
}

/// Unit direction of travel at parameter t.
inline Point tangent_at(const PathPiece& p, double t) {
  if (const auto* s = std::get_if<Segment>(&p)) return unit(s->b - s->a);
  const Arc& a = std::get<Arc>(p);
  const double theta = a.theta_start + t * a.signed_sweep();
  const Point radial{std::cos(theta), std::sin(theta)};
  return a.orientation == Orientation::CCW ? perp(radial) : perp(radial) * -1.0;
}

inline PathPiece reversed(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return Segment{s->b, s->a};
  const Arc& a = std::get<Arc>(p);
  return Arc{a.center, a.radius, a.theta_end, a.theta_start,
             a.orientation == Orientation::CCW ? Orientation::CW : Orientation::CCW};
}

/// The part of `p` between parameters t0 and t1 (t0 < t1 keeps direction).
inline PathPiece sub_piece(const PathPiece& p, double t0, double t1) {
  if (const auto* s = std::get_if<Segment>(&p)) return Segment{point_at(p, t0), point_at(p, t1)};
  const Arc& a = std::get<Arc>(p);
  const double th0 = a.theta_start + t0 * a.signed_sweep();
  const double th1 = a.theta_start + t1 * a.signed_sweep();
  return Arc{a.center, a.radius, th0, th1, th1 > th0 ? Orientation::CCW : Orientation::CW};
}

inline std::vector<PathPiece> reversed(const std::vector<PathPiece>& path) {
  std::vector<PathPiece> out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(reversed(*it));
  return out;
}

struct BoundingBox {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  bool overlaps(const BoundingBox& o, double slack) const {
    return xmin <= o.xmax + slack && o.xmin <= xmax + slack && ymin <= o.ymax + slack &&
           o.ymin <= ymax + slack;
  }
};

/// Conservative box (arcs use their full circle).
inline BoundingBox bounding_box(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    return {std::min(s->a.x, s->b.x), std::min(s->a.y, s->b.y), std::max(s->a.x, s->b.x),
            std::max(s->a.y, s->b.y)};
  }
  const Arc& a = std::get<Arc>(p);
  return {a.center.x - a.radius, a.center.y - a.radius, a.center.x + a.radius, a.center.y + a.radius};
}

/// Parameter in [0,1] of the point of `p` closest to q.
inline double param_of(const PathPiece& p, Point q) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    const Point d = s->b - s->a;
    const double l2 = norm2(d);
    if (l2 == 0) return 0;
    return std::clamp(dot(q - s->a, d) / l2, 0.0, 1.0);
  }
  const Arc& a = std::get<Arc>(p);
  const double theta = std::atan2(q.y - a.center.y, q.x - a.center.x);
  const double off = arc_offset(a, theta);
  const double sw = a.sweep();
  if (off <= sw) return off / sw;
  // Outside the arc's span: snap to the nearer endpoint in angle.
  return (off - sw) < (kTwoPi - off) ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// Distances

inline Point closest_point_on_segment(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double l2 = norm2(d);
  if (l2 == 0) return s.a;
  const double t = std::clamp(dot(p - s.a, d) / l2, 0.0, 1.0);
  return s.a + d * t;
}

inline double distance_point_segment(Point p, const Segment& s) {
  return dist(p, closest_point_on_segment(p, s));
}

/// Exact minimum distance from `p` to any point of the piece.
inline double min_distance_piece_point(const PathPiece& piece, Point p) {
  if (const auto* s = std::get_if<Segment>(&piece)) return distance_point_segment(p, *s);
  const Arc& a = std::get<Arc>(piece);
  const Point v = p - a.center;
  const double d = norm(v);
  if (d == 0) return a.radius;
  const double theta = std::atan2(v.y, v.x);
  if (arc_contains_angle(a, theta, 0.0)) return std::abs(d - a.radius);
  return std::min(dist(p, a.start()), dist(p, a.end()));
}

inline Point closest_point_on_piece(const PathPiece& piece, Point p) {
  if (const auto* s = std::get_if<Segment>(&piece)) return closest_point_on_segment(p, *s);
  const Arc& a = std::get<Arc>(piece);
  const Point v = p - a.center;
  if (norm(v) == 0) return a.start();
  const double theta = std::atan2(v.y, v.x);
  if (arc_contains_angle(a, theta, 0.0)) return a.at_angle(theta);
  return dist(p, a.start()) <= dist(p, a.end()) ? a.start() : a.end();
}

// ---------------------------------------------------------------------------
// Intersections

/// 0, 1 or 2 points; two points means a collinear overlap (its extreme points).
inline std::vector<Point> intersect_segment_segment(const Segment& s1, const Segment& s2) {
  const Point r = s1.b - s1.a;
  const Point s = s2.b - s2.a;
  const double rl = norm(r), sl = norm(s);
  if (rl == 0 || sl == 0) return {};
  const double denom = cross(r, s);
  const Point qp = s2.a - s1.a;
  if (std::abs(denom) <= 1e-12 * rl * sl) {
    // Parallel: overlap only if collinear.
    if (std::abs(cross(r, qp)) / rl > kEps) return {};
    const double t0 = dot(s2.a - s1.a, r) / (rl * rl);
    const double t1 = dot(s2.b - s1.a, r) / (rl * rl);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    const double slack = kEps / rl;
    if (lo > hi + slack) return {};
    if ((hi - lo) * rl <= kEps) return {s1.a + r * std::clamp(0.5 * (lo + hi), 0.0, 1.0)};
    return {s1.a + r * lo, s1.a + r * hi};
  }
  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  if (t < -kEps / rl || t > 1 + kEps / rl || u < -kEps / sl || u > 1 + kEps / sl) return {};
  return {s1.a + r * std::clamp(t, 0.0, 1.0)};
}

/// Intersections of a full circle with a segment. Near-tangency snaps to one
/// point.
inline std::vector<Point> intersect_circle_segment(Point c, double r, const Segment& s) {
  const Point d = s.b - s.a;
  const double l = norm(d);
  if (l == 0) return {};
  const Point u = d / l;
  const double tf = dot(c - s.a, u);
  const Point foot = s.a + u * tf;
  const double h = dist(c, foot);
  std::vector<Point> out;
  auto keep = [&](double t) {
    if (t >= -kEps && t <= l + kEps) out.push_back(s.a + u * std::clamp(t, 0.0, l));
  };
  const int cmp = compare(h, r);
  if (cmp > 0) return out;
  if (cmp == 0) {
    keep(tf);
    return out;
  }
  const double w = std::sqrt(r * r - h * h);
  keep(tf - w);
  keep(tf + w);
  return out;
}

/// Throws CoincidentCircles for identical circles.
inline std::vector<Point> intersect_circle_circle(Point c1, double r1, Point c2, double r2) {
  const double d = dist(c1, c2);
  if (compare(d, 0) == 0) {
    if (compare(r1, r2) == 0) throw CoincidentCircles();
    return {};
  }
  if (compare(d, r1 + r2) > 0 || compare(d, std::abs(r1 - r2)) < 0) return {};
  const Point u = (c2 - c1) / d;
  const double a = (d * d + r1 * r1 - r2 * r2) / (2 * d);
  if (compare(d, r1 + r2) == 0 || compare(d, std::abs(r1 - r2)) == 0) return {c1 + u * a};
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point m = c1 + u * a;
  return {m + perp(u) * h, m - perp(u) * h};
}

/// Intersections between two pieces (arcs filtered to their angular span).
/// Overlapping collinear segments report the overlap's extreme points;
/// overlapping co-circular arcs report nothing (callers split them at the
/// other piece's endpoints instead).
inline std::vector<Point> intersect_pieces(const PathPiece& p, const PathPiece& q) {
  const auto* s1 = std::get_if<Segment>(&p);
  const auto* s2 = std::get_if<Segment>(&q);
  if (s1 && s2) return intersect_segment_segment(*s1, *s2);
  auto on_arc = [](const Arc& a, Point x) {
    return arc_contains_angle(a, std::atan2(x.y - a.center.y, x.x - a.center.x));
  };
  std::vector<Point> out;
  if (s1 || s2) {
    const Segment& s = s1 ? *s1 : *s2;
    const Arc& a = std::get<Arc>(s1 ? q : p);
    for (Point x : intersect_circle_segment(a.center, a.radius, s))
      if (on_arc(a, x)) out.push_back(x);
    return out;
  }
  const Arc& a = std::get<Arc>(p);
  const Arc& b = std::get<Arc>(q);
  std::vector<Point> cand;
  try {
    cand = intersect_circle_circle(a.center, a.radius, b.center, b.radius);
  } catch (const CoincidentCircles&) {
    return {};
  }
  for (Point x : cand)
    if (on_arc(a, x) && on_arc(b, x)) out.push_back(x);
  return out;
}

inline double segment_segment_distance(const Segment& s1, const Segment& s2) {
  if (!intersect_segment_segment(s1, s2).empty()) return 0.0;
  return std::min({distance_point_segment(s1.a, s2), distance_point_segment(s1.b, s2),
                   distance_point_segment(s2.a, s1), distance_point_segment(s2.b, s1)});
}

/// Exact minimum distance between a piece and a segment.
inline double piece_segment_distance(const PathPiece& piece, const Segment& s) {
  if (const auto* seg = std::get_if<Segment>(&piece)) return segment_segment_distance(*seg, s);
  const Arc& a = std::get<Arc>(piece);
  if (!intersect_pieces(piece, PathPiece{s}).empty()) return 0.0;
  double best = std::min({distance_point_segment(a.start(), s), distance_point_segment(a.end(), s),
                          min_distance_piece_point(piece, s.a), min_distance_piece_point(piece, s.b)});
  // Interior critical points: radial direction perpendicular to the segment.
  const Point d = s.b - s.a;
  if (norm2(d) > 0) {
    const Point n = unit(perp(d));
    for (double sign : {1.0, -1.0}) {
      const Point q = a.center + n * (sign * a.radius);
      const double theta = std::atan2(q.y - a.center.y, q.x - a.center.x);
      if (arc_contains_angle(a, theta, 0.0)) best = std::min(best, distance_point_segment(q, s));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Polygons

enum class Location { Inside, Boundary, Outside };

inline double signed_area(const Polygon& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

/// Crossing-number classification with a kEps boundary band.
inline Location point_in_polygon(Point p, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[j], b = poly[i];
    if (distance_point_segment(p, {a, b}) <= kEps) return Location::Boundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

/// Distance from p to the polygon boundary.
inline double boundary_distance(const Polygon& poly, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) best = std::min(best, distance_point_segment(p, poly.edge(i)));
  return best;
}

/// Minimum distance from a piece to the polygon boundary.
inline double boundary_distance(const Polygon& poly, const PathPiece& piece) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) best = std::min(best, piece_segment_distance(piece, poly.edge(i)));
  return best;
}

/// True at vertices where the interior angle exceeds pi (CCW polygon).
inline bool is_reflex(const Polygon& poly, std::size_t i) {
  const std::size_t n = poly.size();
  const Point prev = poly[(i + n - 1) % n], cur = poly[i], next = poly[(i + 1) % n];
  return cross(cur - prev, next - cur) < 0;
}

/// Validates simplicity and returns the polygon with CCW orientation.
/// Throws DegeneratePolygon on self-intersection, short edges or < 3 vertices.
inline Polygon make_polygon(std::vector<Point> pts) {
  if (pts.size() >= 2 && approx_equal(pts.front(), pts.back())) pts.pop_back();
  const std::size_t n = pts.size();
  if (n < 3) throw DegeneratePolygon("polygon needs at least 3 vertices");
  for (const Point& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DegeneratePolygon("non-finite coordinate");
  Polygon poly{std::move(pts)};
  for (std::size_t i = 0; i < n; ++i)
    if (poly.edge(i).length() <= 1e-6) throw DegeneratePolygon("near-zero-length edge " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const auto hits = intersect_segment_segment(poly.edge(i), poly.edge(j));
      if (!adjacent) {
        if (!hits.empty()) throw DegeneratePolygon("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      } else if (hits.size() > 1) {
        throw DegeneratePolygon("adjacent edges overlap at vertex");
      }
    }
  }
  if (std::abs(signed_area(poly)) <= 1e-9) throw DegeneratePolygon("polygon has zero area");
  if (signed_area(poly) < 0) std::reverse(poly.vertices.begin(), poly.vertices.end());
  return poly;
}

}  // namespace discplan
