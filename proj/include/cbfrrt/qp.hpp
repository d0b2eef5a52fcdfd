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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cbfrrt/safety.hpp"

namespace cbfrrt {

// Rows with |a| at or below this are treated as independent of omega.
inline constexpr double kTolZero = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// min (omega - omega_ref)^2  s.t.  a_i omega + b_i >= 0,  lo <= omega <= hi.
struct ScalarQpProblem {
  double omega_ref = 0.0;
  Interval bounds;
  std::vector<ConstraintRow> rows;
};

struct QpSolution {
  double omega_star = 0.0;
  Interval active_interval;
};

// Intersection of the box with every row's half-line; nullopt if empty.
std::optional<Interval> feasible_interval(const ScalarQpProblem& problem);

std::optional<QpSolution> solve_scalar_qp(const ScalarQpProblem& problem);

// General small QP with identity Hessian:
//   min |u - u_ref|^2  s.t.  G u + c >= 0,  lower <= u <= upper.
// Infinite box entries are ignored. Solved exactly by enumerating active sets
// of size 0..dim; the best feasible candidate wins, ties going to the smaller
// set and then to the lexicographically first one.
struct BoxQpProblem {
  Eigen::VectorXd u_ref;
  Eigen::MatrixXd G;  // rows x dim
  Eigen::VectorXd c;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct BoxQpSolution {
  Eigen::VectorXd u;
  std::vector<int> active_set;  // indices into rows, then box faces (2 per dim: lower, upper)
};

inline constexpr int kMaxBoxQpDim = 3;

std::optional<BoxQpSolution> solve_box_qp(const BoxQpProblem& problem);

}  // namespace cbfrrt
