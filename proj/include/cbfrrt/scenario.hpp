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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cbfrrt/baselines.hpp"
#include "cbfrrt/planner.hpp"

namespace cbfrrt {

inline constexpr int kScenarioSchemaVersion = 1;

// Malformed document (not JSON, wrong types, missing or unknown keys).
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// On-disk scenario: the planning problem plus baseline and audit options.
// SI units throughout; angles in radians.
struct ScenarioFile {
  std::string name;
  Scenario scenario;
  BaselineParams baseline;
  double goal_clear_horizon = 20.0;   // s; goal disk must stay obstacle-free over [t_init, t_init + this]
  std::optional<double> dt_audit;     // s; defaults to planner dt / 4
  nlohmann::json metadata = nlohmann::json::object();  // free-form, carried through untouched

  double effective_dt_audit() const { return dt_audit.value_or(scenario.params.dt / 4.0); }

  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

// Parses and validates; throws ScenarioParseError, InvalidScenario or
// InfeasibleScenario.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const ScenarioFile& file);
std::string write_scenario(const ScenarioFile& file);

// Semantic checks on top of validate_scenario: x_init safe at t_init and the
// goal disk clear of every obstacle over the declared horizon.
void check_scenario_feasible(const ScenarioFile& file);

// Smallest center distance from a point to a constant-velocity obstacle over [t0, t1].
double min_center_distance(const CircularObstacle& obstacle, const Point2& point, double t0, double t1);

}  // namespace cbfrrt
