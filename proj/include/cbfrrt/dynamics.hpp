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

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace cbfrrt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Unicycle configuration. Heading accumulates and is never wrapped.
struct RobotState {
  double x1 = 0.0;
  double x2 = 0.0;
  double theta = 0.0;

  Point2 position() const { return {x1, x2}; }
  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct ControlInput {
  double v = 0.0;
  double omega = 0.0;

  friend bool operator==(const ControlInput&, const ControlInput&) = default;
};

struct StateDerivative {
  double dx1 = 0.0;
  double dx2 = 0.0;
  double dtheta = 0.0;
};

// Disk moving with constant velocity; center0 is the centroid at t = 0.
struct CircularObstacle {
  Point2 center0;
  Point2 velocity;
  double radius = 0.0;

  friend bool operator==(const CircularObstacle&, const CircularObstacle&) = default;
};

// Wrapped difference a - b in (-pi, pi].
double angle_difference(double a, double b);

struct TrajectorySample {
  double t = 0.0;
  RobotState state;
  ControlInput control;  // held on [t, t + dt)

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

StateDerivative unicycle_vector_field(const RobotState& state, const ControlInput& control);

Point2 obstacle_center_at(const CircularObstacle& obstacle, double t);

// One classical RK4 step with the control held constant over dt.
RobotState rk4_step(const RobotState& state, const ControlInput& control, double dt);

// Returns std::nullopt when the controller has no admissible control.
using Controller = std::function<std::optional<ControlInput>(const RobotState&, double)>;

// Fixed-step closed-loop integration over [t0, t0 + horizon]. The controller
// is queried at every node (the final one included) and its output is held
// until the next node. The last step is shortened so the final timestamp is
// exactly t0 + horizon. Any controller failure discards the whole trajectory.
std::optional<Trajectory> integrate_closed_loop(const RobotState& initial, double t0, double horizon,
                                                double dt, const Controller& controller);

std::size_t step_count(double horizon, double dt);

}  // namespace cbfrrt
