// JSON scene and plan files.
//
// Scene: {"name": str, "seed": int, "polygon": [[x,y],...],
//         "starts": [[x,y],...], "targets": [[x,y],...]}
// Plan:  {"component_order": [int,...],
//         "moves": [{"from": [x,y], "to": [x,y], "pieces": [piece,...]}],
//         "statistics": {"move_count": int, "total_path_length": num, "piece_count": int}}
// piece: {"type": "seg", "a": [x,y], "b": [x,y]} or
//        {"type": "arc", "center": [x,y], "radius": r, "theta_start": a,
//         "theta_end": b, "orientation": "ccw" | "cw"}
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "discplan/scene.hpp"
#include "json.hpp"

namespace discplan {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

using nlohmann::json;

inline json to_json(Point p) { return json::array({p.x, p.y}); }

inline Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected [x, y], got " + j.dump());
  Point p{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw FormatError("non-finite coordinate");
  return p;
}

inline std::vector<Point> points_from(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of [x, y]");
  std::vector<Point> out;
  for (const auto& e : j) out.push_back(point_from(e));
  return out;
}

inline json to_json(const PathPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return {{"type", "seg"}, {"a", to_json(s->a)}, {"b", to_json(s->b)}};
  const Arc& a = std::get<Arc>(p);
  return {{"type", "arc"},
          {"center", to_json(a.center)},
          {"radius", a.radius},
          {"theta_start", a.theta_start},
          {"theta_end", a.theta_end},
          {"orientation", a.orientation == Orientation::CCW ? "ccw" : "cw"}};
}

inline PathPiece piece_from(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "seg") return Segment{point_from(j.at("a")), point_from(j.at("b"))};
  if (type != "arc") throw FormatError("unknown piece type '" + type + "'");
  Arc a;
  a.center = point_from(j.at("center"));
  a.radius = j.at("radius").get<double>();
  a.theta_start = j.at("theta_start").get<double>();
  a.theta_end = j.at("theta_end").get<double>();
  const std::string o = j.at("orientation").get<std::string>();
  if (o != "ccw" && o != "cw") throw FormatError("arc orientation must be ccw or cw");
  a.orientation = o == "ccw" ? Orientation::CCW : Orientation::CW;
  if ((a.orientation == Orientation::CCW) != (a.theta_end > a.theta_start))
    throw FormatError("arc orientation disagrees with its angles");
  return a;
}

}  // namespace io

inline nlohmann::json scene_to_json(const Scene& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["polygon"] = nlohmann::json::array();
  for (Point p : s.polygon.vertices) j["polygon"].push_back(io::to_json(p));
  j["starts"] = nlohmann::json::array();
  for (Point p : s.starts) j["starts"].push_back(io::to_json(p));
  j["targets"] = nlohmann::json::array();
  for (Point p : s.targets) j["targets"].push_back(io::to_json(p));
  return j;
}

inline Scene scene_from_json(const nlohmann::json& j) {
  try {
    Scene s;
    s.name = j.value("name", "");
    s.seed = j.value("seed", std::uint64_t{0});
    s.polygon.vertices = io::points_from(j.at("polygon"), "polygon");
    s.starts = io::points_from(j.at("starts"), "starts");
    s.targets = io::points_from(j.at("targets"), "targets");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad scene: ") + e.what());
  }
}

inline nlohmann::json plan_to_json(const MotionPlan& plan) {
  nlohmann::json j;
  j["component_order"] = plan.component_order;
  j["moves"] = nlohmann::json::array();
  for (const auto& m : plan.moves) {
    nlohmann::json mv{{"from", io::to_json(m.from)}, {"to", io::to_json(m.to)}, {"pieces", nlohmann::json::array()}};
    for (const auto& p : m.path) mv["pieces"].push_back(io::to_json(p));
    j["moves"].push_back(std::move(mv));
  }
  const PlanStatistics st = plan_statistics(plan);
  j["statistics"] = {{"move_count", st.move_count},
                     {"total_path_length", st.total_path_length},
                     {"piece_count", st.piece_count}};
  return j;
}

inline MotionPlan plan_from_json(const nlohmann::json& j) {
  try {
    MotionPlan plan;
    plan.component_order = j.value("component_order", std::vector<int>{});
    for (const auto& mv : j.at("moves")) {
      DiscMove m;
      m.from = io::point_from(mv.at("from"));
      m.to = io::point_from(mv.at("to"));
      for (const auto& p : mv.at("pieces")) m.path.push_back(io::piece_from(p));
      plan.moves.push_back(std::move(m));
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad plan: ") + e.what());
  }
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

inline Scene load_scene(const std::string& path) { return scene_from_json(read_json_file(path)); }
inline MotionPlan load_plan(const std::string& path) { return plan_from_json(read_json_file(path)); }
inline void save_scene(const std::string& path, const Scene& s) { write_text_file(path, scene_to_json(s).dump(2) + "\n"); }
inline void save_plan(const std::string& path, const MotionPlan& p) { write_text_file(path, plan_to_json(p).dump(1) + "\n"); }

}  // namespace discplan
