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

#include <span>
#include <vector>

#include "cbfrrt/dynamics.hpp"

namespace cbfrrt {

// Gains of the exponential barrier condition hdd + k2 * hd + k1 * h >= 0.
// Both must be positive so that s^2 + k2 s + k1 is Hurwitz.
struct EcbfGains {
  double k1 = 0.0;
  double k2 = 0.0;

  friend bool operator==(const EcbfGains&, const EcbfGains&) = default;
};

bool gains_valid(const EcbfGains& gains);

// Linear constraint a * omega + b >= 0.
struct ConstraintRow {
  double a = 0.0;
  double b = 0.0;
};

// h = |p - c(t)|^2 - r^2; non-negative outside the disk.
double barrier_value(const RobotState& state, const CircularObstacle& obstacle, double t);

// Time derivative of h along robot and obstacle motion at forward speed v_const.
// The angular rate does not enter this derivative.
double barrier_lie1(const RobotState& state, double v_const, const CircularObstacle& obstacle, double t);

// Exponential barrier row for one obstacle. With relative velocity rho and
// offset d = p - c(t):
//   a = 2 v (d2 cos(theta) - d1 sin(theta))
//   b = 2 |rho|^2 + k1 h + k2 hd
ConstraintRow ecbf_row(const RobotState& state, double v_const, const CircularObstacle& obstacle, double t,
                       const EcbfGains& gains);

std::vector<ConstraintRow> constraint_rows(const RobotState& state, double v_const,
                                           std::span<const CircularObstacle> obstacles, double t,
                                           const EcbfGains& gains);

bool is_safe(const RobotState& state, std::span<const CircularObstacle> obstacles, double t);

// Smallest barrier value over all obstacles; +inf for an empty list.
double min_barrier(const RobotState& state, std::span<const CircularObstacle> obstacles, double t);

}  // namespace cbfrrt
