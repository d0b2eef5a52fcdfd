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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cbfrrt/dynamics.hpp"
#include "cbfrrt/scenario.hpp"

namespace cbfrrt {

enum class Algorithm { kCbfRrt, kRrt, kRrtStar };

std::string_view algorithm_name(Algorithm algorithm);
// Accepts cbf-rrt, rrt, rrt-star (and rrt* as an alias).
Algorithm parse_algorithm(std::string_view name);

// Per-run overrides. `step` is t_h for cbf-rrt and delta_d for the baselines.
struct RunOptions {
  std::optional<double> step;
  std::optional<double> dt;
  std::optional<std::size_t> max_iters;
};

struct RunReport {
  std::string algorithm;
  std::uint64_t seed = 0;
  double step = 0.0;
  bool success = false;
  double wall_time = 0.0;  // s, planning only
  std::size_t iterations = 0;
  std::size_t vertex_count = 0;
  std::optional<double> path_length;    // m
  std::optional<double> path_duration;  // s
  std::optional<double> min_barrier;    // m^2, from the independent audit
  bool audit_pass = false;
  std::optional<std::size_t> first_solution_iteration;
  std::optional<std::size_t> first_solution_vertices;
};

struct RunOutput {
  RunReport report;
  Trajectory trajectory;
  nlohmann::json tree;
};

ScenarioFile apply_overrides(const ScenarioFile& file, Algorithm algorithm, std::uint64_t seed,
                             const RunOptions& options);

// Runs one planner and re-audits whatever trajectory it returns.
RunOutput run(const ScenarioFile& file, Algorithm algorithm, std::uint64_t seed, const RunOptions& options = {});

// Deterministic report document (wall time is kept out of it).
nlohmann::json report_to_json(const RunReport& report);

// trajectory.csv, tree.json, report.json and timing.json inside `dir`.
void write_run_artifacts(const RunOutput& output, const std::filesystem::path& dir);

double path_length(const Trajectory& trajectory);

struct SweepEntry {
  Algorithm algorithm = Algorithm::kCbfRrt;
  double step = 0.0;
};

std::vector<SweepEntry> parse_sweep(const std::string& text);
std::vector<SweepEntry> load_sweep(const std::filesystem::path& path);

// Accepts a count ("20" -> seeds 0..19) or a comma-separated list ("3,5,8").
std::vector<std::uint64_t> parse_seeds(std::string_view text);

struct CompareRow {
  std::string algorithm;
  double step = 0.0;
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::size_t errors = 0;
  double median_wall_time = 0.0;
  double median_vertex_count = 0.0;
  double median_iterations = 0.0;
  std::optional<double> median_path_length;
  std::size_t audit_failures = 0;  // successful runs whose trajectory fails the audit
};

struct CompareResult {
  std::vector<CompareRow> rows;     // sweep order
  std::vector<RunReport> runs;      // sorted by (sweep entry, seed)
};

// Runs the cross product of sweep entries and seeds on up to `threads`
// workers. Results do not depend on the execution order. A run that throws
// is counted under `errors` instead of aborting the sweep.
CompareResult compare(const ScenarioFile& file, std::span<const SweepEntry> sweep,
                      std::span<const std::uint64_t> seeds, std::size_t threads, const RunOptions& options = {});

std::string comparison_csv(const std::vector<CompareRow>& rows);
std::string runs_csv(const std::vector<RunReport>& runs);

// CBFRRT_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t threads_from_env();

double median(std::vector<double> values);

}  // namespace cbfrrt
