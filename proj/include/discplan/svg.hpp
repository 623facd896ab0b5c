// SVG rendering of scenes, free space and plans.
#pragma once

#include <array>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>

#include "discplan/free_space.hpp"
#include "discplan/scene.hpp"

namespace discplan {

namespace svg_detail {

inline std::string num(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 8);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("0");
}

inline std::string pt(Point p) { return num(p.x) + " " + num(p.y); }

/// Path data continuing from the current point along `piece`.
inline std::string piece_data(const PathPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return " L " + pt(s->b);
  const Arc& a = std::get<Arc>(piece);
  // Split full circles so the endpoints differ.
  if (a.full_circle()) {
    const Arc h1 = std::get<Arc>(sub_piece(a, 0.0, 0.5)), h2 = std::get<Arc>(sub_piece(a, 0.5, 1.0));
    return piece_data(h1) + piece_data(h2);
  }
  const int large = a.sweep() > kPi ? 1 : 0;
  const int sweep = a.orientation == Orientation::CCW ? 1 : 0;
  return " A " + num(a.radius) + " " + num(a.radius) + " 0 " + std::to_string(large) + " " + std::to_string(sweep) +
         " " + pt(a.end());
}

inline std::string path_data(const std::vector<PathPiece>& pieces) {
  if (pieces.empty()) return {};
  std::string d = "M " + pt(start_point(pieces.front()));
  for (const auto& p : pieces) d += piece_data(p);
  return d;
}

}  // namespace svg_detail

/// Drawing in workspace coordinates (y up) scaled to roughly 900px wide.
inline std::string render_svg(const Scene& scene, const std::optional<FreeSpace>& fs,
                              const std::optional<MotionPlan>& plan) {
  using svg_detail::num;
  double xmin = scene.polygon[0].x, xmax = xmin, ymin = scene.polygon[0].y, ymax = ymin;
  for (Point v : scene.polygon.vertices) {
    xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
  }
  const double pad = 1.0, w = xmax - xmin + 2 * pad, h = ymax - ymin + 2 * pad;
  const double stroke = std::max(w, h) / 600;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"" << num(900 * h / w) << "\" viewBox=\""
    << num(xmin - pad) << " " << num(-ymax - pad) << " " << num(w) << " " << num(h) << "\">\n";
  o << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << num(stroke) << "\">\n";
  o << "<polygon fill=\"#f4f1ea\" stroke=\"#222\" points=\"";
  for (Point v : scene.polygon.vertices) o << num(v.x) << "," << num(v.y) << " ";
  o << "\"/>\n";
  if (fs)
    for (const auto& c : fs->components)
      for (const auto& ch : c.boundary) {
        std::vector<PathPiece> pieces;
        for (const auto& cv : ch.pieces) pieces.push_back(cv.piece);
        o << "<path class=\"free\" fill=\"#dfe9f5\" stroke=\"#4a78b0\" d=\"" << svg_detail::path_data(pieces)
          << " Z\"/>\n";
      }
  auto disc = [&](Point p, const char* color, const char* cls) {
    o << "<circle class=\"" << cls << "-disc\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
      << "\" r=\"2\" stroke=\"" << color << "\" stroke-dasharray=\"" << num(4 * stroke) << "\"/>\n";
    o << "<circle class=\"" << cls << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"1\" fill=\""
      << color << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
  };
  for (Point s : scene.starts) disc(s, "#2a9d4a", "start");
  for (Point t : scene.targets) disc(t, "#c0392b", "target");
  if (plan) {
    const std::size_t n = plan->moves.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double f = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
      const int hue = static_cast<int>(270 * f);
      o << "<path class=\"move\" data-move=\"" << i << "\" stroke=\"hsl(" << hue << ",70%,45%)\" d=\""
        << svg_detail::path_data(plan->moves[i].path) << "\"/>\n";
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace discplan
