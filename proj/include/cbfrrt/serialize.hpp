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
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cbfrrt/baselines.hpp"
#include "cbfrrt/planner.hpp"

namespace cbfrrt {

inline constexpr const char* kTrajectoryCsvHeader = "t,x1,x2,theta,v,omega";

class TrajectoryParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

std::string trajectory_to_csv(const Trajectory& trajectory);
Trajectory parse_trajectory_csv(const std::string& text);
Trajectory load_trajectory_csv(const std::filesystem::path& path);

nlohmann::json plan_tree_to_json(const PlanTree& tree);
nlohmann::json geom_tree_to_json(const GeomTree& tree);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cbfrrt
