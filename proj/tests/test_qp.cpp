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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "cbfrrt/qp.hpp"
#include "oracles.hpp"

using namespace cbfrrt;

namespace {

constexpr Interval kBounds{-4.25, 4.25};

ScalarQpProblem random_problem(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coef(-5, 5);
  std::uniform_int_distribution<int> nrows(0, 5);
  ScalarQpProblem p;
  p.omega_ref = coef(gen);
  p.bounds = kBounds;
  const int n = nrows(gen);
  for (int i = 0; i < n; ++i) {
    p.rows.push_back({coef(gen), coef(gen)});
  }
  return p;
}

}  // namespace

TEST_CASE("feasible interval examples") {
  ScalarQpProblem p{0.0, kBounds, {}};
  CHECK(feasible_interval(p) == Interval{-4.25, 4.25});

  p.rows = {{-2.0, 3.92}};
  const auto iv = feasible_interval(p);
  REQUIRE(iv);
  CHECK(iv->lo == -4.25);
  CHECK(iv->hi == doctest::Approx(1.96));

  p.rows = {{0.0, -4.08}};
  CHECK_FALSE(feasible_interval(p));
  CHECK_FALSE(solve_scalar_qp(p));

  // |a| below tol_zero is treated as omega-independent
  p.rows = {{1e-13, 0.5}};
  CHECK(feasible_interval(p) == Interval{-4.25, 4.25});
}

TEST_CASE("scalar QP examples") {
  ScalarQpProblem p{0.0, kBounds, {}};
  REQUIRE(solve_scalar_qp(p));
  CHECK(solve_scalar_qp(p)->omega_star == 0.0);

  p.rows = {{-2.0, 3.92}};
  CHECK(solve_scalar_qp(p)->omega_star == 0.0);
  CHECK(solve_scalar_qp(p)->active_interval.hi == doctest::Approx(1.96));

  p.rows = {{1.0, -1.0}};
  const auto sol = solve_scalar_qp(p);
  REQUIRE(sol);
  CHECK(sol->omega_star == doctest::Approx(1.0));
  const auto grid = oracle::grid_scalar_qp(p);
  REQUIRE(grid.argmin);
  CHECK(std::abs(*grid.argmin - sol->omega_star) <= 1e-3);
}

TEST_CASE("scalar QP agrees with grid search") {
  std::mt19937_64 gen(31337);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    const ScalarQpProblem p = random_problem(gen);
    const auto sol = solve_scalar_qp(p);
    const auto grid = oracle::grid_scalar_qp(p);
    const bool narrow = sol ? (sol->active_interval.hi - sol->active_interval.lo <= 2e-3)
                            : (grid.feasible_points > 0 && grid.feasible_points <= 2);
    if (narrow) {
      continue;
    }
    ++compared;
    REQUIRE(sol.has_value() == grid.argmin.has_value());
    if (sol) {
      CHECK(std::abs(sol->omega_star - *grid.argmin) <= 1e-3);
    }
  }
  CHECK(compared > 900);
}

TEST_CASE("scalar QP solution properties") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> widen(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    ScalarQpProblem p = random_problem(gen);
    const auto sol = solve_scalar_qp(p);
    if (!sol) {
      continue;
    }
    const double w = sol->omega_star;
    CHECK(w >= p.bounds.lo);
    CHECK(w <= p.bounds.hi);
    CHECK(w >= sol->active_interval.lo);
    CHECK(w <= sol->active_interval.hi);
    for (const auto& r : p.rows) {
      CHECK(r.a * w + r.b >= -1e-9);
    }

    bool ref_feasible = p.omega_ref >= p.bounds.lo && p.omega_ref <= p.bounds.hi;
    for (const auto& r : p.rows) {
      ref_feasible = ref_feasible && r.a * p.omega_ref + r.b >= 0.0;
    }
    if (ref_feasible) {
      CHECK(w == p.omega_ref);
    }

    ScalarQpProblem wider = p;
    wider.bounds = {p.bounds.lo - widen(gen), p.bounds.hi + widen(gen)};
    const auto sol2 = solve_scalar_qp(wider);
    REQUIRE(sol2);
    CHECK(std::abs(sol2->omega_star - p.omega_ref) <= std::abs(w - p.omega_ref) + 1e-15);
  }
}

TEST_CASE("box QP examples") {
  BoxQpProblem p;
  p.u_ref = Eigen::Vector2d(0.2, -0.1);
  p.G = Eigen::MatrixXd(1, 2);
  p.G << 1, 1;
  p.c = Eigen::VectorXd::Constant(1, 1.0);
  p.lower = Eigen::Vector2d(-1, -1);
  p.upper = Eigen::Vector2d(1, 1);
  auto sol = solve_box_qp(p);
  REQUIRE(sol);
  CHECK((sol->u - p.u_ref).norm() == 0.0);
  CHECK(sol->active_set.empty());

  p.u_ref = Eigen::Vector2d(0, 0);
  p.c(0) = -2.0;
  const double inf = std::numeric_limits<double>::infinity();
  p.lower = Eigen::Vector2d::Constant(-inf);
  p.upper = Eigen::Vector2d::Constant(inf);
  sol = solve_box_qp(p);
  REQUIRE(sol);
  CHECK(sol->u(0) == doctest::Approx(1.0));
  CHECK(sol->u(1) == doctest::Approx(1.0));
  CHECK(sol->active_set == std::vector<int>{0});

  // reference above the upper face of the second coordinate, no rows
  BoxQpProblem q;
  q.u_ref = Eigen::Vector3d(0, 5, 0);
  q.G = Eigen::MatrixXd(0, 3);
  q.c = Eigen::VectorXd(0);
  q.lower = Eigen::Vector3d::Constant(-1);
  q.upper = Eigen::Vector3d::Constant(1);
  sol = solve_box_qp(q);
  REQUIRE(sol);
  CHECK(sol->u(1) == 1.0);
  CHECK(sol->active_set == std::vector<int>{3});

  // contradictory rows
  p.G = Eigen::MatrixXd(2, 2);
  p.G << 1, 0, -1, 0;
  p.c = Eigen::Vector2d(-1, -1);  // u1 >= 1 and u1 <= -1
  CHECK_FALSE(solve_box_qp(p));

  BoxQpProblem big;
  big.u_ref = Eigen::VectorXd::Zero(4);
  big.G = Eigen::MatrixXd(0, 4);
  big.c = Eigen::VectorXd(0);
  big.lower = Eigen::VectorXd::Constant(4, -1);
  big.upper = Eigen::VectorXd::Constant(4, 1);
  CHECK_THROWS_AS(solve_box_qp(big), std::invalid_argument);
}

TEST_CASE("box QP agrees with grid search in 2-D") {
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> coef(-1, 1), ref(-2, 2);
  std::uniform_int_distribution<int> nrows(0, 3);
  int compared = 0;
  for (int i = 0; i < 40; ++i) {
    BoxQpProblem p;
    p.u_ref = Eigen::Vector2d(ref(gen), ref(gen));
    const int n = nrows(gen);
    p.G = Eigen::MatrixXd(n, 2);
    p.c = Eigen::VectorXd(n);
    for (int r = 0; r < n; ++r) {
      p.G(r, 0) = coef(gen);
      p.G(r, 1) = coef(gen);
      p.c(r) = coef(gen);
    }
    p.lower = Eigen::Vector2d(-1, -1);
    p.upper = Eigen::Vector2d(1, 1);
    const auto sol = solve_box_qp(p);
    const auto grid = oracle::grid_box_qp(p);
    if (!sol || !grid) {
      // only thin slivers may disagree
      if (sol.has_value() != grid.has_value()) {
        CHECK(sol.has_value());
      }
      continue;
    }
    ++compared;
    const double f_sol = (sol->u - p.u_ref).squaredNorm();
    const double f_grid = (*grid - p.u_ref).squaredNorm();
    // Every grid point is feasible, so the solver must be at least as good, and
    // strong convexity bounds |g - u*|^2 by f(g) - f(u*).
    CHECK(f_sol <= f_grid + 1e-12);
    CHECK((sol->u - *grid).squaredNorm() <= f_grid - f_sol + 1e-12);
    bool box_only = true;
    for (int idx : sol->active_set) {
      box_only = box_only && idx >= n;
    }
    if (box_only) {
      CHECK((sol->u - *grid).norm() <= 2e-3);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      CHECK(p.G.row(r).dot(sol->u) + p.c(r) >= -1e-9);
    }
  }
  CHECK(compared > 20);
}
