// Free space of a unit disc inside a simple polygon, its connected
// components, the collision regions D*(x) = D_2(x) ∩ F_i, and the punctured
// components F_i \ ∪ D*(x) split into subregions.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "discplan/arrangement.hpp"
#include "discplan/geometry.hpp"

namespace discplan {

inline constexpr double kRobotRadius = 1.0;
inline constexpr double kCollisionRadius = 2.0;
/// Components with less area than this are treated as snapping slivers.
inline constexpr double kSliverArea = 1e-8;

/// Tag carried by boundary pieces that come from the free-space boundary
/// (as opposed to collision-disc arcs, which carry their vertex index).
inline constexpr int kFreeBoundaryTag = -1;

class OutsideFreeSpace : public GeometryError {
 public:
  explicit OutsideFreeSpace(Point p)
      : GeometryError("configuration (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") is not in the free space") {}
};

struct FreeComponent {
  int id = 0;
  /// Closed boundary chains; the first is the outer one. A simply connected
  /// component has exactly one.
  std::vector<Chain> boundary;
  std::vector<Point> starts;
  std::vector<Point> targets;
  double area = 0.0;

  const Chain& outer() const { return boundary.front(); }
};

struct FreeSpace {
  Polygon polygon;
  std::vector<FreeComponent> components;
  std::string source_scene_id;
};

/// Clearance test against the closed free space: inside the polygon and at
/// least `1 - tol` from its boundary.
inline bool in_free_space(const Polygon& poly, Point p, double tol = kEps) {
  if (point_in_polygon(p, poly) == Location::Outside) return false;
  return boundary_distance(poly, p) >= kRobotRadius - tol;
}

/// Candidate boundary curves of the erosion: every edge offset inward by one,
/// and the unit arc joining the offsets at every reflex vertex.
inline std::vector<Curve> erosion_candidates(const Polygon& poly) {
  const std::size_t n = poly.size();
  std::vector<Point> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = poly.edge(i);
    normals[i] = perp(unit(e.b - e.a));
  }
  std::vector<Curve> curves;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = poly.edge(i);
    curves.push_back({Segment{e.a + normals[i], e.b + normals[i]}, static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_reflex(poly, i)) continue;
    const Point in = normals[(i + n - 1) % n];
    const Point out = normals[i];
    const double sweep = std::atan2(cross(in, out), dot(in, out));
    if (std::abs(sweep) < 1e-12) continue;
    curves.push_back({make_arc(poly[i], kRobotRadius, std::atan2(in.y, in.x), sweep), static_cast<int>(n + i)});
  }
  return curves;
}

inline FreeSpace compute_free_space(const Polygon& input, std::string scene_id = {}) {
  FreeSpace fs;
  fs.polygon = make_polygon(input.vertices);
  fs.source_scene_id = std::move(scene_id);
  const Polygon& poly = fs.polygon;
  const auto curves = erosion_candidates(poly);
  auto inside = [&poly](Point p) {
    return point_in_polygon(p, poly) == Location::Inside && boundary_distance(poly, p) >= kRobotRadius;
  };
  auto faces = group_faces(trace_region_boundary(curves, inside));
  std::erase_if(faces, [](const Face& f) { return f.outer.area < kSliverArea; });
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.outer.box.xmin != b.outer.box.xmin) return a.outer.box.xmin < b.outer.box.xmin;
    return a.outer.box.ymin < b.outer.box.ymin;
  });
  for (auto& f : faces) {
    FreeComponent c;
    c.id = static_cast<int>(fs.components.size());
    c.area = f.outer.area;
    for (const auto& h : f.holes) c.area += h.area;
    c.boundary.push_back(std::move(f.outer));
    for (auto& h : f.holes) c.boundary.push_back(std::move(h));
    fs.components.push_back(std::move(c));
  }
  return fs;
}

/// True if p has clearance at least `1 - tol` and is enclosed by the
/// component's outer boundary.
inline bool in_component(const FreeSpace& fs, const FreeComponent& comp, Point p, double tol = kEps) {
  if (!box_contains(comp.outer().box, p, 1e-6)) return false;
  if (!in_free_space(fs.polygon, p, tol)) return false;
  return winding_number(comp.outer(), p) != 0;
}

/// Component containing p, or nullopt if p's clearance is below one.
/// Points on the free-space boundary count as inside.
inline std::optional<int> locate(const FreeSpace& fs, Point p) {
  if (!in_free_space(fs.polygon, p)) return std::nullopt;
  for (const auto& c : fs.components)
    if (encloses(c.outer(), p)) return c.id;
  int best = -1;
  double best_d = 1e-6;
  for (const auto& c : fs.components) {
    const double d = distance_to_chain(c.outer(), p);
    if (d <= best_d) {
      best = c.id;
      best_d = d;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

/// Distributes starts and targets over the components; returns the points
/// that could not be located.
inline std::vector<Point> assign_configurations(FreeSpace& fs, const std::vector<Point>& starts,
                                                const std::vector<Point>& targets) {
  std::vector<Point> unlocated;
  for (auto& c : fs.components) {
    c.starts.clear();
    c.targets.clear();
  }
  for (Point s : starts) {
    if (auto id = locate(fs, s)) fs.components[*id].starts.push_back(s);
    else unlocated.push_back(s);
  }
  for (Point t : targets) {
    if (auto id = locate(fs, t)) fs.components[*id].targets.push_back(t);
    else unlocated.push_back(t);
  }
  return unlocated;
}

struct CollisionRegion {
  Point owner;
  int component_id = 0;
  /// Boundary chains; connectedness means exactly one.
  std::vector<Chain> boundary;
};

/// D*(x): the part of the radius-2 disc around x inside x's component.
inline CollisionRegion collision_region(const FreeSpace& fs, Point x) {
  const auto id = locate(fs, x);
  if (!id) throw OutsideFreeSpace(x);
  const FreeComponent& comp = fs.components[*id];
  std::vector<Curve> curves;
  for (const auto& c : comp.outer().pieces) curves.push_back({c.piece, kFreeBoundaryTag});
  curves.push_back({full_circle(x, kCollisionRadius), 0});
  auto inside = [&](Point p) { return dist(p, x) < kCollisionRadius && in_component(fs, comp, p, 0.0); };
  CollisionRegion region{x, *id, trace_region_boundary(curves, inside)};
  return region;
}

struct Subregion {
  int id = 0;
  Chain outer;               // the outer boundary (Γ)
  std::vector<Chain> holes;  // floating collision discs
  std::vector<int> adjacent; // vertex indices whose collision discs touch it
};

struct PuncturedComponent {
  int parent = 0;
  std::vector<Point> vertices;  // the configurations whose discs were removed
  std::vector<Subregion> subregions;

  std::size_t piece_count() const {
    std::size_t n = 0;
    for (const auto& s : subregions) {
      n += s.outer.size();
      for (const auto& h : s.holes) n += h.size();
    }
    return n;
  }
};

/// F_i minus the collision discs of `vertices` (the configurations of S_i ∪ T_i),
/// split into connected subregions.
inline PuncturedComponent puncture(const FreeSpace& fs, int component_id, const std::vector<Point>& vertices) {
  const FreeComponent& comp = fs.components.at(component_id);
  std::vector<Curve> curves;
  for (const auto& c : comp.outer().pieces) curves.push_back({c.piece, kFreeBoundaryTag});
  for (std::size_t k = 0; k < vertices.size(); ++k)
    curves.push_back({full_circle(vertices[k], kCollisionRadius), static_cast<int>(k)});
  auto inside = [&](Point p) {
    for (Point v : vertices)
      if (dist(p, v) < kCollisionRadius) return false;
    return in_component(fs, comp, p, 0.0);
  };
  auto faces = group_faces(trace_region_boundary(curves, inside));
  std::erase_if(faces, [](const Face& f) { return f.outer.area < kSliverArea; });

  PuncturedComponent pc;
  pc.parent = component_id;
  pc.vertices = vertices;
  for (auto& f : faces) {
    Subregion s;
    s.id = static_cast<int>(pc.subregions.size());
    auto collect = [&s](const Chain& ch) {
      for (const auto& c : ch.pieces)
        if (c.tag >= 0) s.adjacent.push_back(c.tag);
    };
    collect(f.outer);
    for (const auto& h : f.holes) collect(h);
    std::sort(s.adjacent.begin(), s.adjacent.end());
    s.adjacent.erase(std::unique(s.adjacent.begin(), s.adjacent.end()), s.adjacent.end());
    s.outer = std::move(f.outer);
    s.holes = std::move(f.holes);
    pc.subregions.push_back(std::move(s));
  }
  return pc;
}

}  // namespace discplan
