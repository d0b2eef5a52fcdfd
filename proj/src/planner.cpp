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

#include "cbfrrt/planner.hpp"

#include <algorithm>
#include <cmath>

namespace cbfrrt {

VertexId PlanTree::add_root(const RobotState& state, double time) {
  if (!vertices_.empty()) {
    throw std::logic_error("PlanTree::add_root: tree already has a root");
  }
  vertices_.push_back({0, state, time, std::nullopt, std::nullopt});
  return 0;
}

VertexId PlanTree::add_child(VertexId parent, Trajectory edge_trajectory) {
  if (parent >= vertices_.size()) {
    throw std::out_of_range("PlanTree::add_child: unknown parent");
  }
  if (edge_trajectory.empty()) {
    throw std::invalid_argument("PlanTree::add_child: empty edge");
  }
  const VertexId child = vertices_.size();
  const EdgeId eid = edges_.size();
  const TrajectorySample& last = edge_trajectory.back();
  vertices_.push_back({child, last.state, last.t, parent, eid});
  edges_.push_back({eid, parent, child, std::move(edge_trajectory)});
  return child;
}

void validate_scenario(const Scenario& s) {
  auto finite = [](double v) { return std::isfinite(v); };
  const PlannerParams& p = s.params;
  if (!finite(s.x_init.x1) || !finite(s.x_init.x2) || !finite(s.x_init.theta)) {
    throw InvalidScenario("x_init", "must be finite");
  }
  if (!finite(s.t_init)) {
    throw InvalidScenario("t_init", "must be finite");
  }
  if (!finite(s.goal.x) || !finite(s.goal.y)) {
    throw InvalidScenario("goal", "must be finite");
  }
  if (!(p.t_h > 0.0) || !finite(p.t_h)) {
    throw InvalidScenario("planner.t_h", "must be positive");
  }
  if (!(p.dt > 0.0) || !(p.dt <= p.t_h)) {
    throw InvalidScenario("planner.dt", "must satisfy 0 < dt <= t_h");
  }
  if (!(p.sigma2 >= 0.0) || !finite(p.sigma2)) {
    throw InvalidScenario("planner.sigma2", "must be non-negative");
  }
  if (!(p.epsilon > 0.0) || !finite(p.epsilon)) {
    throw InvalidScenario("planner.epsilon", "must be positive");
  }
  if (!(p.gains.k1 > 0.0) || !finite(p.gains.k1)) {
    throw InvalidScenario("planner.k1", "must be positive");
  }
  if (!(p.gains.k2 > 0.0) || !finite(p.gains.k2)) {
    throw InvalidScenario("planner.k2", "must be positive");
  }
  if (!finite(p.v_const)) {
    throw InvalidScenario("planner.v", "must be finite");
  }
  if (!finite(p.omega_ref)) {
    throw InvalidScenario("planner.omega_ref", "must be finite");
  }
  if (!finite(p.omega_bounds.lo) || !finite(p.omega_bounds.hi) || p.omega_bounds.lo > p.omega_bounds.hi) {
    throw InvalidScenario("planner.omega_bounds", "must be finite with lo <= hi");
  }
  if (p.max_iters < 1) {
    throw InvalidScenario("planner.max_iters", "must be at least 1");
  }
  switch (p.reference.kind) {
    case ReferenceSampling::Kind::kConstant:
      break;
    case ReferenceSampling::Kind::kUniform:
      if (!finite(p.reference.omega_range.lo) || !finite(p.reference.omega_range.hi) ||
          p.reference.omega_range.lo > p.reference.omega_range.hi) {
        throw InvalidScenario("planner.reference.omega_range", "must be finite with lo <= hi");
      }
      break;
    case ReferenceSampling::Kind::kChoice:
      if (p.reference.choices.empty()) {
        throw InvalidScenario("planner.reference.choices", "must not be empty");
      }
      break;
  }
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const CircularObstacle& o = s.obstacles[i];
    const std::string where = "obstacles[" + std::to_string(i) + "]";
    if (!finite(o.center0.x) || !finite(o.center0.y)) {
      throw InvalidScenario(where + ".center", "must be finite");
    }
    if (!finite(o.velocity.x) || !finite(o.velocity.y)) {
      throw InvalidScenario(where + ".velocity", "must be finite");
    }
    if (!(o.radius > 0.0) || !finite(o.radius)) {
      throw InvalidScenario(where + ".radius", "must be positive");
    }
  }
}

const Vertex& vertices_sample(const PlanTree& tree, Rng& rng) {
  return tree.vertices()[rng.uniform_index(tree.size())];
}

double heading_to_goal(const Point2& from, const Point2& goal) {
  const double dx = goal.x - from.x;
  const double dy = goal.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    return 0.0;
  }
  return std::atan2(dy, dx);
}

Vertex state_sample(const Vertex& vertex, const Point2& goal, double sigma2, Rng& rng) {
  Vertex expanded = vertex;
  expanded.state.theta = heading_to_goal(vertex.state.position(), goal) + std::sqrt(sigma2) * rng.normal();
  return expanded;
}

ControlInput reference_sample(Rng& rng, const PlannerParams& params) {
  const ReferenceSampling& ref = params.reference;
  switch (ref.kind) {
    case ReferenceSampling::Kind::kUniform:
      return {params.v_const, rng.uniform(ref.omega_range.lo, ref.omega_range.hi)};
    case ReferenceSampling::Kind::kChoice:
      return ref.choices[rng.uniform_index(ref.choices.size())];
    case ReferenceSampling::Kind::kConstant:
      break;
  }
  return {params.v_const, params.omega_ref};
}

std::optional<SteerResult> safe_steer(const Vertex& vertex, double t_h, const ControlInput& u_ref,
                                      std::span<const CircularObstacle> obstacles, const PlannerParams& params) {
  ScalarQpProblem qp;
  qp.omega_ref = u_ref.omega;
  qp.bounds = params.omega_bounds;
  qp.rows.reserve(obstacles.size());

  const Controller controller = [&](const RobotState& x, double t) -> std::optional<ControlInput> {
    // The exponential barrier condition is only posed on the interior of each
    // safe set. A resampled heading can start the system outside the region
    // where that condition is invariant, so leaving the interior ends the edge.
    if (!(min_barrier(x, obstacles, t) > 0.0)) {
      return std::nullopt;
    }
    qp.rows = constraint_rows(x, u_ref.v, obstacles, t, params.gains);
    const std::optional<QpSolution> sol = solve_scalar_qp(qp);
    if (!sol) {
      return std::nullopt;
    }
    return ControlInput{u_ref.v, sol->omega_star};
  };

  std::optional<Trajectory> traj = integrate_closed_loop(vertex.state, vertex.time, t_h, params.dt, controller);
  if (!traj) {
    return std::nullopt;
  }
  const TrajectorySample& last = traj->back();
  SteerResult out{std::move(*traj), last.state, last.t};
  return out;
}

bool goal_check(const Trajectory& trajectory, const Point2& goal, double epsilon) {
  return std::any_of(trajectory.samples.begin(), trajectory.samples.end(), [&](const TrajectorySample& s) {
    return distance(s.state.position(), goal) <= epsilon;
  });
}

std::vector<VertexId> path_to_root(const PlanTree& tree, VertexId vertex) {
  if (vertex >= tree.size()) {
    throw std::out_of_range("path_to_root: unknown vertex id " + std::to_string(vertex));
  }
  std::vector<VertexId> ids;
  std::optional<VertexId> cur = vertex;
  while (cur) {
    ids.push_back(*cur);
    cur = tree.vertex(*cur).parent;
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

Trajectory extract_path(const PlanTree& tree, VertexId goal_vertex) {
  const std::vector<VertexId> ids = path_to_root(tree, goal_vertex);
  Trajectory out;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const Edge& e = tree.edge(*tree.vertex(ids[i]).edge);
    if (!out.empty()) {
      out.samples.pop_back();
    }
    out.samples.insert(out.samples.end(), e.trajectory.samples.begin(), e.trajectory.samples.end());
  }
  return out;
}

PlanResult plan(const Scenario& scenario) {
  validate_scenario(scenario);
  if (!is_safe(scenario.x_init, scenario.obstacles, scenario.t_init)) {
    throw InfeasibleScenario("x_init", "initial state lies inside an obstacle");
  }
  const PlannerParams& params = scenario.params;

  PlanResult result;
  const VertexId root = result.tree.add_root(scenario.x_init, scenario.t_init);
  if (distance(scenario.x_init.position(), scenario.goal) <= params.epsilon) {
    result.status = PlanStatus::kSuccess;
    result.path = {root};
    return result;
  }

  Rng rng(params.seed);
  while (result.iterations < params.max_iters) {
    ++result.iterations;
    const Vertex sampled = vertices_sample(result.tree, rng);
    const Vertex expanding = state_sample(sampled, scenario.goal, params.sigma2, rng);
    const ControlInput u_ref = reference_sample(rng, params);
    std::optional<SteerResult> steer = safe_steer(expanding, params.t_h, u_ref, scenario.obstacles, params);
    if (!steer) {
      ++result.failed_expansions;
      continue;
    }
    const bool reached = goal_check(steer->trajectory, scenario.goal, params.epsilon);
    const VertexId child = result.tree.add_child(sampled.id, std::move(steer->trajectory));
    if (reached) {
      result.status = PlanStatus::kSuccess;
      result.path = path_to_root(result.tree, child);
      result.trajectory = extract_path(result.tree, child);
      return result;
    }
  }
  result.status = PlanStatus::kExhausted;
  return result;
}

}  // namespace cbfrrt
