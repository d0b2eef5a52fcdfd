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

#include "cbfrrt/dynamics.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace cbfrrt {

double angle_difference(double a, double b) {
  double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  if (d <= -std::numbers::pi) {
    d += 2.0 * std::numbers::pi;
  }
  return d;
}

StateDerivative unicycle_vector_field(const RobotState& state, const ControlInput& control) {
  return {control.v * std::cos(state.theta), control.v * std::sin(state.theta), control.omega};
}

Point2 obstacle_center_at(const CircularObstacle& obstacle, double t) {
  return {obstacle.center0.x + obstacle.velocity.x * t, obstacle.center0.y + obstacle.velocity.y * t};
}

namespace {

RobotState advance(const RobotState& s, const StateDerivative& d, double h) {
  return {s.x1 + h * d.dx1, s.x2 + h * d.dx2, s.theta + h * d.dtheta};
}

}  // namespace

RobotState rk4_step(const RobotState& state, const ControlInput& control, double dt) {
  if (dt == 0.0) {
    return state;
  }
  const StateDerivative k1 = unicycle_vector_field(state, control);
  const StateDerivative k2 = unicycle_vector_field(advance(state, k1, 0.5 * dt), control);
  const StateDerivative k3 = unicycle_vector_field(advance(state, k2, 0.5 * dt), control);
  const StateDerivative k4 = unicycle_vector_field(advance(state, k3, dt), control);
  const double w = dt / 6.0;
  return {state.x1 + w * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1),
          state.x2 + w * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2),
          state.theta + w * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta)};
}

std::size_t step_count(double horizon, double dt) {
  // Absorb representation error so that e.g. 0.5 / 0.1 yields 5, not 6.
  const double ratio = horizon / dt;
  const double n = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::optional<Trajectory> integrate_closed_loop(const RobotState& initial, double t0, double horizon,
                                                double dt, const Controller& controller) {
  if (!(horizon > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("integrate_closed_loop: horizon and dt must be positive");
  }
  const std::size_t steps = step_count(horizon, dt);

  Trajectory out;
  out.samples.reserve(steps + 1);
  RobotState state = initial;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = (k == steps) ? t0 + horizon : t0 + static_cast<double>(k) * dt;
    const std::optional<ControlInput> u = controller(state, t);
    if (!u) {
      return std::nullopt;
    }
    out.samples.push_back({t, state, *u});
    if (k < steps) {
      const double t_next = (k + 1 == steps) ? t0 + horizon : t0 + static_cast<double>(k + 1) * dt;
      state = rk4_step(state, *u, t_next - t);
    }
  }
  return out;
}

}  // namespace cbfrrt
