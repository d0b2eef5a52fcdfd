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

#include "cbfrrt/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbfrrt {

std::optional<Interval> feasible_interval(const ScalarQpProblem& problem) {
  double lo = problem.bounds.lo;
  double hi = problem.bounds.hi;
  for (const ConstraintRow& row : problem.rows) {
    if (std::abs(row.a) <= kTolZero) {
      if (row.b < -kTolZero) {
        return std::nullopt;
      }
      continue;
    }
    const double root = -row.b / row.a;
    if (row.a > 0.0) {
      lo = std::max(lo, root);
    } else {
      hi = std::min(hi, root);
    }
  }
  if (!(lo <= hi)) {
    return std::nullopt;
  }
  return Interval{lo, hi};
}

std::optional<QpSolution> solve_scalar_qp(const ScalarQpProblem& problem) {
  const std::optional<Interval> interval = feasible_interval(problem);
  if (!interval) {
    return std::nullopt;
  }
  return QpSolution{std::clamp(problem.omega_ref, interval->lo, interval->hi), *interval};
}

namespace {

struct Halfspace {
  Eigen::VectorXd g;
  double c;
  int index;
};

// Visits all k-subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    idx[static_cast<std::size_t>(i)] = i;
  }
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

std::optional<BoxQpSolution> solve_box_qp(const BoxQpProblem& problem) {
  const auto dim = problem.u_ref.size();
  if (dim < 1 || dim > kMaxBoxQpDim) {
    throw std::invalid_argument("solve_box_qp: dimension must be in [1, 3]");
  }
  if (problem.G.rows() != problem.c.size() || (problem.G.rows() > 0 && problem.G.cols() != dim) ||
      problem.lower.size() != dim || problem.upper.size() != dim) {
    throw std::invalid_argument("solve_box_qp: inconsistent problem dimensions");
  }

  std::vector<Halfspace> cons;
  const auto rows = static_cast<int>(problem.G.rows());
  for (int i = 0; i < rows; ++i) {
    cons.push_back({problem.G.row(i).transpose(), problem.c(i), i});
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    const int base = rows + 2 * static_cast<int>(j);
    if (std::isfinite(problem.lower(j))) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(j) = 1.0;
      cons.push_back({e, -problem.lower(j), base});
    }
    if (std::isfinite(problem.upper(j))) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(j) = -1.0;
      cons.push_back({e, problem.upper(j), base + 1});
    }
  }

  constexpr double kFeasTol = 1e-9;
  auto feasible = [&](const Eigen::VectorXd& u) {
    return std::all_of(cons.begin(), cons.end(), [&](const Halfspace& h) {
      return h.g.dot(u) + h.c >= -kFeasTol * std::max(1.0, h.g.norm());
    });
  };

  std::optional<BoxQpSolution> best;
  double best_obj = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(cons.size());
  const int max_k = std::min(static_cast<int>(dim), n);
  for (int k = 0; k <= max_k; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& subset) {
      Eigen::VectorXd u = problem.u_ref;
      if (k > 0) {
        Eigen::MatrixXd A(k, dim);
        Eigen::VectorXd rhs(k);
        for (int r = 0; r < k; ++r) {
          const Halfspace& h = cons[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])];
          A.row(r) = h.g.transpose();
          rhs(r) = -(h.g.dot(problem.u_ref) + h.c);
        }
        const Eigen::MatrixXd gram = A * A.transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        lu.setThreshold(1e-12);
        if (!lu.isInvertible()) {
          return;
        }
        u += A.transpose() * lu.solve(rhs);
      }
      if (!feasible(u)) {
        return;
      }
      const double obj = (u - problem.u_ref).squaredNorm();
      if (obj < best_obj - 1e-12) {
        best_obj = obj;
        BoxQpSolution sol{u, {}};
        for (int s : subset) {
          sol.active_set.push_back(cons[static_cast<std::size_t>(s)].index);
        }
        best = std::move(sol);
      }
    });
  }
  return best;
}

}  // namespace cbfrrt
