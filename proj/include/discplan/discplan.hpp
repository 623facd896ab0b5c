// Umbrella header.
#pragma once

#include "discplan/arrangement.hpp"
#include "discplan/free_space.hpp"
#include "discplan/generators.hpp"
#include "discplan/geometry.hpp"
#include "discplan/interference.hpp"
#include "discplan/motion_graph.hpp"
#include "discplan/pebble.hpp"
#include "discplan/planner.hpp"
#include "discplan/scene.hpp"
#include "discplan/scene_io.hpp"
#include "discplan/svg.hpp"
#include "discplan/validator.hpp"
