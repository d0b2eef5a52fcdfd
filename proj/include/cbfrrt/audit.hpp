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

#include "cbfrrt/dynamics.hpp"

namespace cbfrrt {

// Barrier floor accepted by the audit; absorbs integration error only.
inline constexpr double kAuditTolerance = 1e-6;

struct AuditResult {
  bool pass = true;
  double min_barrier = 0.0;  // +inf when nothing was evaluated
};

// Re-checks a trajectory independently of how it was produced: positions are
// linearly interpolated between samples at (at most) dt_audit spacing and
// every barrier is evaluated against the obstacle position at that time.
AuditResult audit_trajectory(const Trajectory& trajectory, std::span<const CircularObstacle> obstacles,
                             double dt_audit);

}  // namespace cbfrrt
