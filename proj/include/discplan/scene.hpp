// Problem instances and motion plans.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "discplan/geometry.hpp"

namespace discplan {

struct Scene {
  std::string name;
  std::uint64_t seed = 0;
  Polygon polygon;
  std::vector<Point> starts;
  std::vector<Point> targets;
};

/// One robot travelling from `from` to `to` while every other robot is parked.
struct DiscMove {
  Point from;
  Point to;
  std::vector<PathPiece> path;
};

struct PlanStatistics {
  std::size_t move_count = 0;
  double total_path_length = 0.0;
  std::size_t piece_count = 0;
};

struct MotionPlan {
  std::vector<int> component_order;
  std::vector<DiscMove> moves;
};

inline PlanStatistics plan_statistics(const MotionPlan& plan) {
  PlanStatistics st;
  st.move_count = plan.moves.size();
  for (const auto& m : plan.moves) {
    st.piece_count += m.path.size();
    for (const auto& p : m.path) st.total_path_length += length(p);
  }
  return st;
}

}  // namespace discplan
