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
#include <stdexcept>
#include <string>
#include <vector>

#include "cbfrrt/dynamics.hpp"
#include "cbfrrt/qp.hpp"
#include "cbfrrt/rng.hpp"
#include "cbfrrt/safety.hpp"

namespace cbfrrt {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Vertex {
  VertexId id = 0;
  RobotState state;
  double time = 0.0;
  std::optional<VertexId> parent;
  std::optional<EdgeId> edge;  // edge arriving at this vertex

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  EdgeId id = 0;
  VertexId parent = 0;
  VertexId child = 0;
  Trajectory trajectory;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Time-stamped tree. Ids are dense indices into the vectors.
class PlanTree {
 public:
  VertexId add_root(const RobotState& state, double time);
  VertexId add_child(VertexId parent, Trajectory edge_trajectory);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(VertexId id) const { return vertices_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  friend bool operator==(const PlanTree&, const PlanTree&) = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

// Distribution the reference control is drawn from at each expansion.
struct ReferenceSampling {
  enum class Kind { kConstant, kUniform, kChoice };
  Kind kind = Kind::kConstant;
  Interval omega_range{0.0, 0.0};     // kUniform: omega_ref ~ U[lo, hi], v = v_const
  std::vector<ControlInput> choices;  // kChoice: uniform over the listed pairs

  friend bool operator==(const ReferenceSampling&, const ReferenceSampling&) = default;
};

struct PlannerParams {
  double t_h = 0.5;
  double dt = 0.02;
  double sigma2 = 0.6;
  double epsilon = 0.15;
  EcbfGains gains{2.0, 4.0};
  double v_const = 1.0;
  double omega_ref = 0.0;
  Interval omega_bounds{-4.25, 4.25};
  std::size_t max_iters = 10000;
  std::uint64_t seed = 0;
  ReferenceSampling reference;

  friend bool operator==(const PlannerParams&, const PlannerParams&) = default;
};

struct Scenario {
  RobotState x_init;
  double t_init = 0.0;
  Point2 goal;
  std::vector<CircularObstacle> obstacles;
  PlannerParams params;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Thrown when a scenario or parameter set violates its invariants.
class InvalidScenario : public std::runtime_error {
 public:
  InvalidScenario(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The scenario is well formed but cannot be planned (e.g. x_init in collision).
class InfeasibleScenario : public InvalidScenario {
 public:
  using InvalidScenario::InvalidScenario;
};

// Checks parameter ranges, obstacle sanity and that x_init is safe at t_init.
void validate_scenario(const Scenario& scenario);

const Vertex& vertices_sample(const PlanTree& tree, Rng& rng);

// Heading toward the goal (atan2; 0 when the vertex sits on the goal).
double heading_to_goal(const Point2& from, const Point2& goal);

// Copy of the vertex with theta ~ N(heading_to_goal, sigma2).
Vertex state_sample(const Vertex& vertex, const Point2& goal, double sigma2, Rng& rng);

ControlInput reference_sample(Rng& rng, const PlannerParams& params);

struct SteerResult {
  Trajectory trajectory;
  RobotState x_new;
  double t_new = 0.0;
};

// Closed-loop expansion under the barrier-constrained QP controller. The
// forward speed is held at u_ref.v and the QP chooses omega at every node.
// Fails if the QP is infeasible anywhere along the horizon or a node has
// left the interior of the safe set (h <= 0 for some obstacle).
std::optional<SteerResult> safe_steer(const Vertex& vertex, double t_h, const ControlInput& u_ref,
                                      std::span<const CircularObstacle> obstacles, const PlannerParams& params);

bool goal_check(const Trajectory& trajectory, const Point2& goal, double epsilon);

// Concatenated root-to-vertex trajectory; junction samples are merged, the
// outgoing edge's sample (resampled heading) is kept. Root alone is empty.
Trajectory extract_path(const PlanTree& tree, VertexId goal_vertex);

std::vector<VertexId> path_to_root(const PlanTree& tree, VertexId vertex);

enum class PlanStatus { kSuccess, kExhausted };

struct PlanResult {
  PlanStatus status = PlanStatus::kExhausted;
  PlanTree tree;
  std::vector<VertexId> path;  // root first
  Trajectory trajectory;
  std::size_t iterations = 0;
  std::size_t failed_expansions = 0;

  bool success() const { return status == PlanStatus::kSuccess; }
};

// Sampling-based planner with barrier-certified edges. Per iteration the
// draw order is: vertex, heading, reference control.
PlanResult plan(const Scenario& scenario);

}  // namespace cbfrrt
