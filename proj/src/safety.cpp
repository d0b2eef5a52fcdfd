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

#include "cbfrrt/safety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbfrrt {

namespace {

struct RelativeKinematics {
  double d1, d2;      // robot minus obstacle center
  double rho1, rho2;  // robot minus obstacle velocity
};

RelativeKinematics relative(const RobotState& state, double v_const, const CircularObstacle& obstacle, double t) {
  const Point2 c = obstacle_center_at(obstacle, t);
  return {state.x1 - c.x, state.x2 - c.y, v_const * std::cos(state.theta) - obstacle.velocity.x,
          v_const * std::sin(state.theta) - obstacle.velocity.y};
}

}  // namespace

bool gains_valid(const EcbfGains& gains) { return gains.k1 > 0.0 && gains.k2 > 0.0; }

double barrier_value(const RobotState& state, const CircularObstacle& obstacle, double t) {
  const Point2 c = obstacle_center_at(obstacle, t);
  const double d1 = state.x1 - c.x;
  const double d2 = state.x2 - c.y;
  return d1 * d1 + d2 * d2 - obstacle.radius * obstacle.radius;
}

double barrier_lie1(const RobotState& state, double v_const, const CircularObstacle& obstacle, double t) {
  const RelativeKinematics k = relative(state, v_const, obstacle, t);
  return 2.0 * k.d1 * k.rho1 + 2.0 * k.d2 * k.rho2;
}

ConstraintRow ecbf_row(const RobotState& state, double v_const, const CircularObstacle& obstacle, double t,
                       const EcbfGains& gains) {
  const RelativeKinematics k = relative(state, v_const, obstacle, t);
  const double h = k.d1 * k.d1 + k.d2 * k.d2 - obstacle.radius * obstacle.radius;
  const double hd = 2.0 * k.d1 * k.rho1 + 2.0 * k.d2 * k.rho2;
  const double a = 2.0 * v_const * (k.d2 * std::cos(state.theta) - k.d1 * std::sin(state.theta));
  const double b = 2.0 * (k.rho1 * k.rho1 + k.rho2 * k.rho2) + gains.k1 * h + gains.k2 * hd;
  return {a, b};
}

std::vector<ConstraintRow> constraint_rows(const RobotState& state, double v_const,
                                           std::span<const CircularObstacle> obstacles, double t,
                                           const EcbfGains& gains) {
  std::vector<ConstraintRow> rows;
  rows.reserve(obstacles.size());
  for (const CircularObstacle& o : obstacles) {
    rows.push_back(ecbf_row(state, v_const, o, t, gains));
  }
  return rows;
}

bool is_safe(const RobotState& state, std::span<const CircularObstacle> obstacles, double t) {
  for (const CircularObstacle& o : obstacles) {
    if (barrier_value(state, o, t) < 0.0) {
      return false;
    }
  }
  return true;
}

double min_barrier(const RobotState& state, std::span<const CircularObstacle> obstacles, double t) {
  double m = std::numeric_limits<double>::infinity();
  for (const CircularObstacle& o : obstacles) {
    m = std::min(m, barrier_value(state, o, t));
  }
  return m;
}

}  // namespace cbfrrt
