// Copyright 2026 The cbfrrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbfrrt/dynamics.hpp"
#include "cbfrrt/planner.hpp"
#include "cbfrrt/rng.hpp"

namespace cbfrrt {

// Geometric RRT / RRT* over the 2-D workspace with straight-line steering and
// end-point-only collision checks. Heading is ignored.

struct Rect {
  Point2 lo;
  Point2 hi;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct GeomVertex {
  std::size_t id = 0;
  Point2 position;
  std::optional<std::size_t> parent;
  double cost = 0.0;  // path length from root
};

struct GeomTree {
  std::vector<GeomVertex> vertices;
};

struct BaselineParams {
  double delta_d = 0.25;
  std::size_t max_iters = 1000;
  std::uint64_t seed = 0;
  Rect sample_bounds{{-1.0, -1.0}, {2.5, 2.5}};
  double rewire_gamma = 2.0;
  double goal_bias = 0.0;  // probability of sampling the goal directly

  friend bool operator==(const BaselineParams&, const BaselineParams&) = default;
};

Point2 random_state(const Rect& bounds, Rng& rng);

// Linear scan; ties go to the lowest id.
const GeomVertex& nearest_neighbor(const GeomTree& tree, const Point2& sample);

enum class SteerOutcome { kReached, kAdvanced };

struct StraightSteer {
  Point2 x_new;
  SteerOutcome outcome;
};

StraightSteer steer_straight(const Point2& x_nn, const Point2& x_sample, double delta_d);

// True when the point is outside (or on the boundary of) every disk at t = 0.
bool endpoint_collision_check(const Point2& point, std::span<const CircularObstacle> obstacles);

// True when every point spaced `resolution` apart along the segment, both
// endpoints included, is outside every disk.
bool edge_collision_audit(const Point2& p0, const Point2& p1, std::span<const CircularObstacle> obstacles,
                          double resolution);

struct BaselineResult {
  PlanStatus status = PlanStatus::kExhausted;
  GeomTree tree;
  std::vector<std::size_t> path;  // root first
  std::size_t iterations = 0;
  // RRT* keeps refining after the first connection; RRT stops there.
  std::optional<std::size_t> first_solution_iteration;
  std::optional<std::size_t> first_solution_vertices;
  std::optional<double> first_solution_cost;

  bool success() const { return status == PlanStatus::kSuccess; }
  double path_cost() const;
};

BaselineResult rrt_plan(const Scenario& scenario, const BaselineParams& params);

// Runs the whole iteration budget, choosing parents and rewiring within
// radius min(gamma * sqrt(log n / n), delta_d). The returned path is the
// cheapest vertex inside the goal disk.
BaselineResult rrt_star_plan(const Scenario& scenario, const BaselineParams& params);

// Optional callback invoked after every RRT* iteration (used by tests to
// observe cost monotonicity).
using RrtStarObserver = std::function<void(const GeomTree&, std::optional<std::size_t> best_goal)>;
BaselineResult rrt_star_plan(const Scenario& scenario, const BaselineParams& params, const RrtStarObserver& observer);

// Straight-segment path as a timed trajectory at constant speed v.
Trajectory geometric_path_trajectory(const GeomTree& tree, std::span<const std::size_t> path, double v);

void validate_baseline_params(const BaselineParams& params);

}  // namespace cbfrrt
