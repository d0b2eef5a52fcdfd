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

#include "cbfrrt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbfrrt {

Point2 random_state(const Rect& bounds, Rng& rng) {
  const double x = rng.uniform(bounds.lo.x, bounds.hi.x);
  const double y = rng.uniform(bounds.lo.y, bounds.hi.y);
  return {x, y};
}

const GeomVertex& nearest_neighbor(const GeomTree& tree, const Point2& sample) {
  if (tree.vertices.empty()) {
    throw std::invalid_argument("nearest_neighbor: empty tree");
  }
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const GeomVertex& v : tree.vertices) {
    const double d = distance(v.position, sample);
    if (d < best_d) {
      best_d = d;
      best = v.id;
    }
  }
  return tree.vertices[best];
}

StraightSteer steer_straight(const Point2& x_nn, const Point2& x_sample, double delta_d) {
  const double d = distance(x_nn, x_sample);
  if (d <= delta_d) {
    return {x_sample, SteerOutcome::kReached};
  }
  const double s = delta_d / d;
  return {{x_nn.x + s * (x_sample.x - x_nn.x), x_nn.y + s * (x_sample.y - x_nn.y)}, SteerOutcome::kAdvanced};
}

bool endpoint_collision_check(const Point2& point, std::span<const CircularObstacle> obstacles) {
  return is_safe(RobotState{point.x, point.y, 0.0}, obstacles, 0.0);
}

bool edge_collision_audit(const Point2& p0, const Point2& p1, std::span<const CircularObstacle> obstacles,
                          double resolution) {
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("edge_collision_audit: resolution must be positive");
  }
  const double len = distance(p0, p1);
  const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / resolution)));
  for (std::size_t k = 0; k <= pieces; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(pieces);
    if (!endpoint_collision_check({p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y)}, obstacles)) {
      return false;
    }
  }
  return true;
}

double BaselineResult::path_cost() const {
  if (path.empty()) {
    return 0.0;
  }
  return tree.vertices[path.back()].cost;
}

void validate_baseline_params(const BaselineParams& p) {
  if (!(p.delta_d > 0.0) || !std::isfinite(p.delta_d)) {
    throw InvalidScenario("baseline.delta_d", "must be positive");
  }
  if (p.max_iters < 1) {
    throw InvalidScenario("baseline.max_iters", "must be at least 1");
  }
  if (!std::isfinite(p.sample_bounds.lo.x) || !std::isfinite(p.sample_bounds.lo.y) ||
      !std::isfinite(p.sample_bounds.hi.x) || !std::isfinite(p.sample_bounds.hi.y) ||
      p.sample_bounds.lo.x > p.sample_bounds.hi.x || p.sample_bounds.lo.y > p.sample_bounds.hi.y) {
    throw InvalidScenario("baseline.sample_bounds", "must be a finite rectangle with lo <= hi");
  }
  if (!(p.rewire_gamma >= 0.0) || !std::isfinite(p.rewire_gamma)) {
    throw InvalidScenario("baseline.rewire_gamma", "must be non-negative");
  }
  if (!(p.goal_bias >= 0.0 && p.goal_bias <= 1.0)) {
    throw InvalidScenario("baseline.goal_bias", "must lie in [0, 1]");
  }
}

namespace {

void check_static(const Scenario& scenario) {
  for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
    const Point2& v = scenario.obstacles[i].velocity;
    if (v.x != 0.0 || v.y != 0.0) {
      throw InvalidScenario("obstacles[" + std::to_string(i) + "].velocity",
                            "geometric baselines support static obstacles only");
    }
  }
}

// Shared sampling step. The goal-bias coin is only drawn when the bias is
// non-zero so that the default sequence is a pure stream of uniform points.
Point2 draw_sample(const BaselineParams& params, const Point2& goal, Rng& rng) {
  if (params.goal_bias > 0.0 && rng.uniform01() < params.goal_bias) {
    return goal;
  }
  return random_state(params.sample_bounds, rng);
}

std::vector<std::size_t> geom_path(const GeomTree& tree, std::size_t id) {
  std::vector<std::size_t> ids;
  std::optional<std::size_t> cur = id;
  while (cur) {
    ids.push_back(*cur);
    cur = tree.vertices[*cur].parent;
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

BaselineResult start(const Scenario& scenario, const BaselineParams& params) {
  validate_scenario(scenario);
  validate_baseline_params(params);
  check_static(scenario);
  if (!endpoint_collision_check(scenario.x_init.position(), scenario.obstacles)) {
    throw InfeasibleScenario("x_init", "initial state lies inside an obstacle");
  }
  BaselineResult result;
  result.tree.vertices.push_back({0, scenario.x_init.position(), std::nullopt, 0.0});
  return result;
}

}  // namespace

BaselineResult rrt_plan(const Scenario& scenario, const BaselineParams& params) {
  BaselineResult result = start(scenario, params);
  const double eps = scenario.params.epsilon;
  if (distance(result.tree.vertices[0].position, scenario.goal) <= eps) {
    result.status = PlanStatus::kSuccess;
    result.path = {0};
    result.first_solution_iteration = 0;
    result.first_solution_vertices = 1;
    result.first_solution_cost = 0.0;
    return result;
  }

  Rng rng(params.seed);
  while (result.iterations < params.max_iters) {
    ++result.iterations;
    const Point2 sample = draw_sample(params, scenario.goal, rng);
    const GeomVertex nn = nearest_neighbor(result.tree, sample);
    if (nn.position == sample) {
      continue;
    }
    const Point2 x_new = steer_straight(nn.position, sample, params.delta_d).x_new;
    if (!endpoint_collision_check(x_new, scenario.obstacles)) {
      continue;
    }
    const std::size_t id = result.tree.vertices.size();
    result.tree.vertices.push_back({id, x_new, nn.id, nn.cost + distance(nn.position, x_new)});
    if (distance(x_new, scenario.goal) <= eps) {
      result.status = PlanStatus::kSuccess;
      result.path = geom_path(result.tree, id);
      result.first_solution_iteration = result.iterations;
      result.first_solution_vertices = result.tree.vertices.size();
      result.first_solution_cost = result.tree.vertices[id].cost;
      return result;
    }
  }
  result.status = PlanStatus::kExhausted;
  return result;
}

BaselineResult rrt_star_plan(const Scenario& scenario, const BaselineParams& params) {
  return rrt_star_plan(scenario, params, nullptr);
}

BaselineResult rrt_star_plan(const Scenario& scenario, const BaselineParams& params, const RrtStarObserver& observer) {
  BaselineResult result = start(scenario, params);
  std::vector<GeomVertex>& verts = result.tree.vertices;
  std::vector<std::vector<std::size_t>> children(1);
  std::vector<std::size_t> goal_ids;
  const double eps = scenario.params.epsilon;
  constexpr double kImprove = 1e-12;

  std::optional<std::size_t> best_goal;
  auto refresh_best = [&] {
    for (std::size_t g : goal_ids) {
      if (!best_goal || verts[g].cost < verts[*best_goal].cost - kImprove) {
        best_goal = g;
      }
    }
  };
  auto note_solution = [&] {
    if (best_goal && !result.first_solution_iteration) {
      result.first_solution_iteration = result.iterations;
      result.first_solution_vertices = verts.size();
      result.first_solution_cost = verts[*best_goal].cost;
    }
  };

  if (distance(verts[0].position, scenario.goal) <= eps) {
    goal_ids.push_back(0);
    refresh_best();
    note_solution();
  }

  Rng rng(params.seed);
  std::vector<std::size_t> near;
  std::vector<std::size_t> stack;
  while (result.iterations < params.max_iters) {
    ++result.iterations;
    const Point2 sample = draw_sample(params, scenario.goal, rng);
    const GeomVertex nn = nearest_neighbor(result.tree, sample);
    if (nn.position == sample) {
      if (observer) observer(result.tree, best_goal);
      continue;
    }
    const Point2 x_new = steer_straight(nn.position, sample, params.delta_d).x_new;
    if (!endpoint_collision_check(x_new, scenario.obstacles)) {
      if (observer) observer(result.tree, best_goal);
      continue;
    }

    const double n = static_cast<double>(verts.size());
    const double radius = std::min(params.rewire_gamma * std::sqrt(std::log(n) / n), params.delta_d);
    near.clear();
    if (radius > 0.0) {
      for (const GeomVertex& v : verts) {
        if (distance(v.position, x_new) <= radius) {
          near.push_back(v.id);
        }
      }
    }

    // Choose parent: nearest by default, any cheaper neighbor wins.
    std::size_t parent = nn.id;
    double cost = nn.cost + distance(nn.position, x_new);
    for (std::size_t u : near) {
      const double c = verts[u].cost + distance(verts[u].position, x_new);
      if (c < cost - kImprove) {
        parent = u;
        cost = c;
      }
    }
    const std::size_t id = verts.size();
    verts.push_back({id, x_new, parent, cost});
    children.emplace_back();
    children[parent].push_back(id);
    if (distance(x_new, scenario.goal) <= eps) {
      goal_ids.push_back(id);
    }

    // Rewire neighbors through the new vertex.
    for (std::size_t u : near) {
      if (u == parent) {
        continue;
      }
      const double c = cost + distance(x_new, verts[u].position);
      if (!(c < verts[u].cost - kImprove)) {
        continue;
      }
      auto& siblings = children[*verts[u].parent];
      siblings.erase(std::find(siblings.begin(), siblings.end(), u));
      verts[u].parent = id;
      children[id].push_back(u);
      verts[u].cost = c;
      stack.assign(children[u].begin(), children[u].end());
      while (!stack.empty()) {
        const std::size_t w = stack.back();
        stack.pop_back();
        const GeomVertex& p = verts[*verts[w].parent];
        verts[w].cost = p.cost + distance(p.position, verts[w].position);
        stack.insert(stack.end(), children[w].begin(), children[w].end());
      }
    }

    refresh_best();
    note_solution();
    if (observer) observer(result.tree, best_goal);
  }

  if (best_goal) {
    result.status = PlanStatus::kSuccess;
    result.path = geom_path(result.tree, *best_goal);
  } else {
    result.status = PlanStatus::kExhausted;
  }
  return result;
}

Trajectory geometric_path_trajectory(const GeomTree& tree, std::span<const std::size_t> path, double v) {
  Trajectory out;
  if (path.empty()) {
    return out;
  }
  if (!(v > 0.0)) {
    throw std::invalid_argument("geometric_path_trajectory: speed must be positive");
  }
  double t = 0.0;
  double heading = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Point2& p = tree.vertices[path[i]].position;
    if (i + 1 < path.size()) {
      const Point2& q = tree.vertices[path[i + 1]].position;
      heading = std::atan2(q.y - p.y, q.x - p.x);
    }
    out.samples.push_back({t, {p.x, p.y, heading}, {v, 0.0}});
    if (i + 1 < path.size()) {
      t += distance(p, tree.vertices[path[i + 1]].position) / v;
    }
  }
  return out;
}

}  // namespace cbfrrt
