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

#include "cbfrrt/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbfrrt/safety.hpp"

namespace cbfrrt {

AuditResult audit_trajectory(const Trajectory& trajectory, std::span<const CircularObstacle> obstacles,
                             double dt_audit) {
  if (!(dt_audit > 0.0)) {
    throw std::invalid_argument("audit_trajectory: dt_audit must be positive");
  }
  double lowest = std::numeric_limits<double>::infinity();
  const auto& s = trajectory.samples;
  if (s.size() == 1) {
    lowest = min_barrier(s.front().state, obstacles, s.front().t);
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const TrajectorySample& p = s[i];
    const TrajectorySample& q = s[i + 1];
    const double span = q.t - p.t;
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(span / dt_audit - 1e-9)));
    // The shared endpoint is evaluated as the start of the next interval.
    const std::size_t last = (i + 2 == s.size()) ? pieces : pieces - 1;
    for (std::size_t k = 0; k <= last; ++k) {
      const double a = static_cast<double>(k) / static_cast<double>(pieces);
      const RobotState x{p.state.x1 + a * (q.state.x1 - p.state.x1), p.state.x2 + a * (q.state.x2 - p.state.x2),
                         0.0};
      lowest = std::min(lowest, min_barrier(x, obstacles, p.t + a * span));
    }
  }
  return {lowest >= -kAuditTolerance, lowest};
}

}  // namespace cbfrrt
