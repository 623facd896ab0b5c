// Command-line front end: check, solve, render, gen.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "discplan/generators.hpp"
#include "discplan/planner.hpp"
#include "discplan/scene_io.hpp"
#include "discplan/svg.hpp"
#include "discplan/validator.hpp"
#include "json.hpp"

namespace dp = discplan;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

json report_json(const dp::FeasibilityReport& r) {
  json j;
  j["verdict"] = dp::to_string(r.verdict);
  j["separation_ok"] = r.separation_ok;
  if (std::isfinite(r.min_separation)) j["min_separation"] = r.min_separation;
  j["components"] = json::array();
  for (const auto& c : r.components) j["components"].push_back({{"id", c.id}, {"starts", c.starts}, {"targets", c.targets}});
  j["outside"] = json::array();
  for (auto p : r.outside) j["outside"].push_back(dp::io::to_json(p));
  j["on_boundary"] = json::array();
  for (auto p : r.boundary) j["on_boundary"].push_back(dp::io::to_json(p));
  return j;
}

int cmd_check(const std::string& scene_path) {
  const dp::Scene scene = dp::load_scene(scene_path);
  const auto report = dp::check_feasibility(scene);
  std::cout << report_json(report).dump(2) << "\n";
  return report.verdict == dp::Verdict::Feasible ? kExitOk : kExitInfeasible;
}

int cmd_solve(const std::string& scene_path, const std::string& out, bool validate, bool stats) {
  const dp::Scene scene = dp::load_scene(scene_path);
  dp::MotionPlan plan;
  try {
    plan = dp::solve(scene);
  } catch (const dp::SceneInfeasible& e) {
    std::cerr << e.what() << "\n" << report_json(e.report).dump(2) << "\n";
    return kExitInfeasible;
  }
  dp::save_plan(out, plan);
  if (stats) {
    const auto st = dp::plan_statistics(plan);
    std::cout << json{{"move_count", st.move_count}, {"total_path_length", st.total_path_length},
                      {"piece_count", st.piece_count}}
                     .dump()
              << "\n";
  }
  if (validate) {
    const auto rep = dp::validate(scene, plan);
    std::cout << "validation: " << (rep.ok() ? "ok" : "FAILED") << " min_obstacle_clearance=" << rep.min_obstacle_clearance
              << " min_robot_clearance=" << rep.min_robot_clearance << "\n";
    for (const auto& v : rep.violations)
      std::cout << "  move " << v.move_index << ": " << dp::to_string(v.kind) << " " << v.worst_value << "\n";
    if (!rep.ok()) return kExitInvalid;
  }
  return kExitOk;
}

int cmd_render(const std::string& scene_path, const std::string& plan_path, const std::string& out) {
  const dp::Scene scene = dp::load_scene(scene_path);
  std::optional<dp::FreeSpace> fs;
  try {
    fs = dp::compute_free_space(scene.polygon, scene.name);
  } catch (const dp::GeometryError& e) {
    std::cerr << "warning: free space not drawn: " << e.what() << "\n";
  }
  std::optional<dp::MotionPlan> plan;
  if (!plan_path.empty()) plan = dp::load_plan(plan_path);
  dp::write_text_file(out, dp::render_svg(scene, fs, plan));
  return kExitOk;
}

int cmd_gen(const std::string& kind, const dp::GenParams& gp, bool width_given, const std::string& out) {
  dp::Scene scene;
  if (kind == "random") {
    scene = dp::generate_random(gp);
  } else if (kind == "corridor") {
    const auto cs = width_given ? dp::generate_corridor(gp.rho, gp.width, gp.seed) : dp::generate_corridor(gp.rho, 2.02, gp.seed);
    for (const auto& w : cs.warnings) std::cerr << "warning: " << w << "\n";
    scene = cs.scene;
  } else if (kind == "dumbbell") {
    scene = dp::generate_dumbbell(gp.width, gp.seed);
  } else if (kind == "path-worstcase") {
    scene = dp::generate_path_worstcase(gp.m, gp.seed);
  } else {
    std::cerr << "unknown generator kind '" << kind << "'\n";
    return kExitError;
  }
  dp::save_scene(out, scene);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion planning for unlabeled unit discs in a simple polygon"};
  app.require_subcommand(1);

  std::string scene_path, out_path, plan_path, kind;
  bool validate = false, stats = false;
  dp::GenParams gp;

  auto* check = app.add_subcommand("check", "Decide whether a scene is solvable; exit 0 feasible, 2 infeasible");
  check->add_option("scene", scene_path, "Scene file")->required();

  auto* solve = app.add_subcommand("solve", "Plan motions for a scene; exit 2 infeasible, 3 validation failure");
  solve->add_option("scene", scene_path, "Scene file")->required();
  solve->add_option("-o,--output", out_path, "Plan file to write")->required();
  solve->add_flag("--validate", validate, "Check the plan with the independent validator");
  solve->add_flag("--stats", stats, "Print plan statistics");

  auto* render = app.add_subcommand("render", "Draw a scene and optionally a plan as SVG");
  render->add_option("scene", scene_path, "Scene file")->required();
  render->add_option("--plan", plan_path, "Plan file to overlay");
  render->add_option("-o,--output", out_path, "SVG file to write")->required();

  auto* gen = app.add_subcommand("gen", "Generate a scene");
  gen->add_option("kind", kind, "random | corridor | dumbbell | path-worstcase")
      ->required()
      ->check(CLI::IsMember({"random", "corridor", "dumbbell", "path-worstcase"}));
  gen->add_option("--seed", gp.seed, "Random seed");
  gen->add_option("--n", gp.n, "Target polygon vertex count (random)");
  gen->add_option("--m", gp.m, "Number of robots (random, path-worstcase)");
  gen->add_option("--rho", gp.rho, "Corridor: start separation is 2 + rho");
  auto* width_opt = gen->add_option("--width", gp.width, "Corridor width (dumbbell, corridor)");
  gen->add_option("-o,--output", out_path, "Scene file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*check) return cmd_check(scene_path);
    if (*solve) return cmd_solve(scene_path, out_path, validate, stats);
    if (*render) return cmd_render(scene_path, plan_path, out_path);
    if (*gen) return cmd_gen(kind, gp, width_opt->count() > 0, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
