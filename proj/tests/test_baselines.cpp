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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cbfrrt/audit.hpp"
#include "cbfrrt/baselines.hpp"
#include "cbfrrt/rng.hpp"
#include "cbfrrt/scenario.hpp"

using namespace cbfrrt;

namespace {

const std::vector<CircularObstacle> kExample1 = {
    {{0.3, 1.2}, {0, 0}, 0.2}, {{1.0, 0.5}, {0, 0}, 0.2}, {{1.7, -0.5}, {0, 0}, 0.2}};

ScenarioFile example1() { return load_scenario(std::string(CBFRRT_SCENARIO_DIR) + "/example1.json"); }

GeomTree tree_of(std::vector<Point2> pts) {
  GeomTree t;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    t.vertices.push_back({i, pts[i], i == 0 ? std::nullopt : std::optional<std::size_t>(0), 0.0});
  }
  return t;
}

bool same_tree(const GeomTree& a, const GeomTree& b) {
  if (a.vertices.size() != b.vertices.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    const GeomVertex &u = a.vertices[i], &v = b.vertices[i];
    if (!(u.position == v.position) || u.parent != v.parent || u.cost != v.cost) {
      return false;
    }
  }
  return true;
}

bool path_audit(const BaselineResult& r, std::span<const CircularObstacle> obs) {
  for (std::size_t i = 1; i < r.path.size(); ++i) {
    if (!edge_collision_audit(r.tree.vertices[r.path[i - 1]].position, r.tree.vertices[r.path[i]].position, obs,
                              0.005)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("random workspace samples") {
  Rng rng(1);
  const Point2 p = random_state({{0.5, -0.25}, {0.5, -0.25}}, rng);
  CHECK(p == Point2{0.5, -0.25});

  int q[4] = {0, 0, 0, 0};
  for (int i = 0; i < 10000; ++i) {
    const Point2 s = random_state({{0, 0}, {1, 1}}, rng);
    REQUIRE(s.x >= 0.0);
    REQUIRE(s.x <= 1.0);
    ++q[(s.x >= 0.5 ? 1 : 0) + (s.y >= 0.5 ? 2 : 0)];
  }
  for (int c : q) {
    CHECK(c >= 2350);
    CHECK(c <= 2650);
  }

  Rng a(77), b(77);
  for (int i = 0; i < 50; ++i) {
    CHECK(random_state({{-1, -1}, {2.5, 2.5}}, a) == random_state({{-1, -1}, {2.5, 2.5}}, b));
  }
}

TEST_CASE("nearest neighbor") {
  CHECK(nearest_neighbor(tree_of({{3, 3}}), {0, 0}).id == 0);
  CHECK(nearest_neighbor(tree_of({{0, 0}, {2, 0}}), {0.4, 0}).id == 0);
  CHECK(nearest_neighbor(tree_of({{0, 0}, {2, 0}}), {1.9, 0}).id == 1);
  CHECK(nearest_neighbor(tree_of({{5, 5}, {0, 0}, {2, 0}}), {1, 0}).id == 1);
}

TEST_CASE("straight steering") {
  StraightSteer s = steer_straight({0, 0}, {0.1, 0}, 0.25);
  CHECK(s.x_new == Point2{0.1, 0});
  CHECK(s.outcome == SteerOutcome::kReached);

  s = steer_straight({0, 0}, {1, 0}, 0.25);
  CHECK(s.x_new.x == doctest::Approx(0.25));
  CHECK(s.x_new.y == 0.0);
  CHECK(s.outcome == SteerOutcome::kAdvanced);

  s = steer_straight({0, 0}, {3, 4}, 1.0);
  CHECK(s.x_new.x == doctest::Approx(0.6));
  CHECK(s.x_new.y == doctest::Approx(0.8));
}

TEST_CASE("collision checks") {
  CHECK(endpoint_collision_check({0, 0}, kExample1));
  CHECK_FALSE(endpoint_collision_check({1.0, 0.5}, kExample1));
  const std::vector<CircularObstacle> half = {{{0, 0}, {0, 0}, 0.5}};
  CHECK(endpoint_collision_check({0.5, 0.0}, half));  // on the boundary

  const std::vector<CircularObstacle> disk = {{{1.0, 0.5}, {0, 0}, 0.2}};
  CHECK_FALSE(edge_collision_audit({0.0, 0.0}, {2.0, 1.0}, disk, 0.01));
  CHECK(edge_collision_audit({0.0, 0.0}, {0.5, -0.5}, kExample1, 0.01));

  // both endpoints pass the end-point check, the segment does not
  CHECK(endpoint_collision_check({0.7, 0.5}, disk));
  CHECK(endpoint_collision_check({1.3, 0.5}, disk));
  CHECK_FALSE(edge_collision_audit({0.7, 0.5}, {1.3, 0.5}, disk, 0.01));
}

TEST_CASE("rrt: free world") {
  Scenario s;
  s.x_init = {0, 0, 0};
  s.goal = {0.4, 0.0};
  BaselineParams p;
  p.sample_bounds = {{-0.5, -0.5}, {0.5, 0.5}};
  const BaselineResult r = rrt_plan(s, p);
  CHECK(r.success());
  CHECK(r.iterations < 100);
  CHECK(r.path.front() == 0);
  for (std::size_t i = 1; i < r.tree.vertices.size(); ++i) {
    const GeomVertex& v = r.tree.vertices[i];
    CHECK(distance(v.position, r.tree.vertices[*v.parent].position) <= p.delta_d + 1e-12);
  }
}

TEST_CASE("rrt: example-1 world") {
  const ScenarioFile f = example1();
  BaselineParams p = f.baseline;

  int successes = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    p.seed = seed;
    const BaselineResult r = rrt_plan(f.scenario, p);
    successes += r.success() ? 1 : 0;
    for (std::size_t i = 1; i < r.tree.vertices.size(); ++i) {
      const GeomVertex& v = r.tree.vertices[i];
      REQUIRE(distance(v.position, r.tree.vertices[*v.parent].position) <= p.delta_d + 1e-12);
      REQUIRE(endpoint_collision_check(v.position, f.scenario.obstacles));
    }
  }
  CHECK(successes >= 45);

  // long steps: some accepted edges pass straight through a disk
  p.delta_d = 1.0;
  int crossing = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    p.seed = seed;
    const BaselineResult r = rrt_plan(f.scenario, p);
    for (std::size_t i = 1; i < r.tree.vertices.size(); ++i) {
      const GeomVertex& v = r.tree.vertices[i];
      if (!edge_collision_audit(r.tree.vertices[*v.parent].position, v.position, f.scenario.obstacles, 0.005)) {
        ++crossing;
        break;
      }
    }
  }
  CHECK(crossing > 0);
}

TEST_CASE("rrt and rrt*: determinism") {
  const ScenarioFile f = example1();
  BaselineParams p = f.baseline;
  p.seed = 4;
  CHECK(same_tree(rrt_plan(f.scenario, p).tree, rrt_plan(f.scenario, p).tree));
  p.max_iters = 300;
  const BaselineResult a = rrt_star_plan(f.scenario, p), b = rrt_star_plan(f.scenario, p);
  CHECK(same_tree(a.tree, b.tree));
  CHECK(a.path == b.path);
}

TEST_CASE("rrt*: free world cost") {
  Scenario s;
  s.x_init = {0, 0, 0};
  s.goal = {2, 2};
  BaselineParams p;
  p.max_iters = 3000;
  p.seed = 3;
  const BaselineResult r = rrt_star_plan(s, p);
  REQUIRE(r.success());
  const double straight = distance({0, 0}, s.goal) - s.params.epsilon;
  CHECK(r.path_cost() <= 1.05 * distance({0, 0}, s.goal));
  CHECK(r.path_cost() >= straight - 1e-9);
  CHECK(r.first_solution_cost >= r.path_cost() - 1e-12);
}

TEST_CASE("rrt*: zero rewiring radius reproduces rrt") {
  const ScenarioFile f = example1();
  BaselineParams p = f.baseline;
  p.rewire_gamma = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    const BaselineResult plain = rrt_plan(f.scenario, p);
    REQUIRE(plain.success());
    GeomTree snapshot;
    std::size_t iter = 0;
    const BaselineResult star = rrt_star_plan(f.scenario, p, [&](const GeomTree& t, std::optional<std::size_t>) {
      if (++iter == plain.iterations) {
        snapshot = t;
      }
    });
    CHECK(star.first_solution_iteration == plain.first_solution_iteration);
    CHECK(star.first_solution_vertices == plain.first_solution_vertices);
    CHECK(same_tree(snapshot, plain.tree));
  }
}

TEST_CASE("rrt*: cost bookkeeping across rewires") {
  const ScenarioFile f = example1();
  BaselineParams p = f.baseline;
  p.max_iters = 600;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    p.seed = seed;
    std::vector<double> last;
    bool consistent = true, monotone = true;
    rrt_star_plan(f.scenario, p, [&](const GeomTree& t, std::optional<std::size_t>) {
      for (const GeomVertex& v : t.vertices) {
        double len = 0.0;
        for (std::optional<std::size_t> cur = v.id; t.vertices[*cur].parent; cur = t.vertices[*cur].parent) {
          len += distance(t.vertices[*cur].position, t.vertices[*t.vertices[*cur].parent].position);
        }
        consistent = consistent && std::abs(len - v.cost) <= 1e-9;
        if (v.id < last.size()) {
          monotone = monotone && v.cost <= last[v.id];
        }
      }
      last.clear();
      for (const GeomVertex& v : t.vertices) {
        last.push_back(v.cost);
      }
    });
    CHECK(consistent);
    CHECK(monotone);
  }
}

TEST_CASE("rrt*: example-1 budget and vertex counts") {
  const ScenarioFile f = example1();
  BaselineParams p = f.baseline;
  int successes = 0;
  std::vector<double> star_counts, plain_counts;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    const BaselineResult star = rrt_star_plan(f.scenario, p);
    const BaselineResult plain = rrt_plan(f.scenario, p);
    CHECK(star.iterations == p.max_iters);
    CHECK(star.tree.vertices.size() > 0.7 * static_cast<double>(p.max_iters));
    star_counts.push_back(static_cast<double>(star.tree.vertices.size()));
    plain_counts.push_back(static_cast<double>(plain.tree.vertices.size()));
    if (star.success()) {
      ++successes;
      CHECK(*star.first_solution_cost >= star.path_cost() - 1e-12);
      CHECK(distance(star.tree.vertices[star.path.back()].position, f.scenario.goal) <= f.scenario.params.epsilon);
    }
  }
  std::sort(star_counts.begin(), star_counts.end());
  std::sort(plain_counts.begin(), plain_counts.end());
  CHECK(star_counts[5] > 2 * plain_counts[5]);
  CHECK(successes >= 8);
}

TEST_CASE("baseline inputs") {
  Scenario s;
  s.goal = {1, 1};
  s.obstacles = {{{2, 0}, {0.1, 0}, 0.2}};
  CHECK_THROWS_AS(rrt_plan(s, BaselineParams{}), InvalidScenario);
  s.obstacles = {{{0, 0}, {0, 0}, 0.2}};
  CHECK_THROWS_AS(rrt_star_plan(s, BaselineParams{}), InfeasibleScenario);
  s.obstacles.clear();
  BaselineParams bad;
  bad.delta_d = 0.0;
  CHECK_THROWS_AS(rrt_plan(s, bad), InvalidScenario);
}

TEST_CASE("geometric path as a timed trajectory") {
  const GeomTree t = tree_of({{0, 0}, {3, 4}});
  const std::vector<std::size_t> path = {0, 1};
  const Trajectory traj = geometric_path_trajectory(t, path, 1.0);
  REQUIRE(traj.size() == 2);
  CHECK(traj.back().t == doctest::Approx(5.0));
  CHECK(traj.front().state.theta == doctest::Approx(std::atan2(4.0, 3.0)));
  CHECK(audit_trajectory(traj, {}, 0.005).pass);

  const std::vector<CircularObstacle> disk = {{{1.5, 2.0}, {0, 0}, 0.2}};
  CHECK_FALSE(audit_trajectory(traj, disk, 0.005).pass);
  CHECK(path_audit(BaselineResult{PlanStatus::kSuccess, t, path, 0, {}, {}, {}}, disk) == false);
}
