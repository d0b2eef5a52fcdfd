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

#include "cbfrrt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cbfrrt/audit.hpp"
#include "cbfrrt/baselines.hpp"
#include "cbfrrt/planner.hpp"
#include "cbfrrt/serialize.hpp"

namespace cbfrrt {

using nlohmann::json;

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRrt:
      return "rrt";
    case Algorithm::kRrtStar:
      return "rrt-star";
    case Algorithm::kCbfRrt:
      break;
  }
  return "cbf-rrt";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "cbf-rrt") return Algorithm::kCbfRrt;
  if (name == "rrt") return Algorithm::kRrt;
  if (name == "rrt-star" || name == "rrt*") return Algorithm::kRrtStar;
  throw InvalidScenario("algorithm", "unknown algorithm '" + std::string(name) + "'");
}

ScenarioFile apply_overrides(const ScenarioFile& file, Algorithm algorithm, std::uint64_t seed,
                             const RunOptions& options) {
  ScenarioFile out = file;
  out.scenario.params.seed = seed;
  out.baseline.seed = seed;
  if (options.dt) {
    out.scenario.params.dt = *options.dt;
  }
  if (options.max_iters) {
    out.scenario.params.max_iters = *options.max_iters;
    out.baseline.max_iters = *options.max_iters;
  }
  if (options.step) {
    if (algorithm == Algorithm::kCbfRrt) {
      out.scenario.params.t_h = *options.step;
    } else {
      out.baseline.delta_d = *options.step;
    }
  }
  return out;
}

double path_length(const Trajectory& trajectory) {
  double len = 0.0;
  for (std::size_t i = 1; i < trajectory.samples.size(); ++i) {
    len += distance(trajectory.samples[i - 1].state.position(), trajectory.samples[i].state.position());
  }
  return len;
}

namespace {

void fill_path_metrics(RunReport& report, const Trajectory& trajectory, const ScenarioFile& file) {
  report.path_length = path_length(trajectory);
  report.path_duration = trajectory.back().t - trajectory.front().t;
  const AuditResult audit = audit_trajectory(trajectory, file.scenario.obstacles, file.effective_dt_audit());
  report.audit_pass = audit.pass;
  if (std::isfinite(audit.min_barrier)) {
    report.min_barrier = audit.min_barrier;
  }
}

}  // namespace

RunOutput run(const ScenarioFile& input, Algorithm algorithm, std::uint64_t seed, const RunOptions& options) {
  const ScenarioFile file = apply_overrides(input, algorithm, seed, options);
  validate_scenario(file.scenario);
  validate_baseline_params(file.baseline);
  check_scenario_feasible(file);

  RunOutput out;
  RunReport& report = out.report;
  report.algorithm = std::string(algorithm_name(algorithm));
  report.seed = seed;
  report.step = algorithm == Algorithm::kCbfRrt ? file.scenario.params.t_h : file.baseline.delta_d;

  const auto started = std::chrono::steady_clock::now();
  if (algorithm == Algorithm::kCbfRrt) {
    PlanResult result = plan(file.scenario);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.success = result.success();
    report.iterations = result.iterations;
    report.vertex_count = result.tree.size();
    out.tree = plan_tree_to_json(result.tree);
    out.trajectory = std::move(result.trajectory);
    if (report.success && out.trajectory.empty()) {
      // Goal already satisfied at the root.
      const PlannerParams& p = file.scenario.params;
      out.trajectory.samples.push_back({file.scenario.t_init, file.scenario.x_init, {p.v_const, p.omega_ref}});
    }
    if (report.success) {
      report.first_solution_iteration = report.iterations;
      report.first_solution_vertices = report.vertex_count;
    }
  } else {
    const BaselineResult result = algorithm == Algorithm::kRrt ? rrt_plan(file.scenario, file.baseline)
                                                               : rrt_star_plan(file.scenario, file.baseline);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.success = result.success();
    report.iterations = result.iterations;
    report.vertex_count = result.tree.vertices.size();
    report.first_solution_iteration = result.first_solution_iteration;
    report.first_solution_vertices = result.first_solution_vertices;
    out.tree = geom_tree_to_json(result.tree);
    const double v = file.scenario.params.v_const > 0.0 ? file.scenario.params.v_const : 1.0;
    out.trajectory = geometric_path_trajectory(result.tree, result.path, v);
  }

  if (report.success) {
    fill_path_metrics(report, out.trajectory, file);
  }
  return out;
}

json report_to_json(const RunReport& r) {
  auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
  return {{"algorithm", r.algorithm},
          {"seed", r.seed},
          {"step", r.step},
          {"status", r.success ? "success" : "exhausted"},
          {"success", r.success},
          {"iterations", r.iterations},
          {"vertex_count", r.vertex_count},
          {"path_length", opt(r.path_length)},
          {"path_duration", opt(r.path_duration)},
          {"min_barrier", opt(r.min_barrier)},
          {"audit_pass", r.audit_pass},
          {"first_solution_iteration", opt(r.first_solution_iteration)},
          {"first_solution_vertices", opt(r.first_solution_vertices)}};
}

void write_run_artifacts(const RunOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "trajectory.csv", trajectory_to_csv(output.trajectory));
  write_file_atomic(dir / "tree.json", output.tree.dump() + "\n");
  write_file_atomic(dir / "report.json", report_to_json(output.report).dump(2) + "\n");
  const json timing = {{"algorithm", output.report.algorithm},
                       {"seed", output.report.seed},
                       {"wall_time", output.report.wall_time}};
  write_file_atomic(dir / "timing.json", timing.dump(2) + "\n");
}

std::vector<SweepEntry> parse_sweep(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("malformed sweep JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc.at("entries").is_array()) {
    throw ScenarioParseError("sweep: expected an object with an 'entries' array");
  }
  std::vector<SweepEntry> out;
  const json& entries = doc.at("entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("algorithm") || !e.at("algorithm").is_string() || !e.contains("step") ||
        !e.at("step").is_number()) {
      throw ScenarioParseError(where + ": expected {\"algorithm\": string, \"step\": number}");
    }
    SweepEntry entry{parse_algorithm(e.at("algorithm").get<std::string>()), e.at("step").get<double>()};
    if (!(entry.step > 0.0) || !std::isfinite(entry.step)) {
      throw InvalidScenario(where + ".step", "must be positive");
    }
    out.push_back(entry);
  }
  if (out.empty()) {
    throw InvalidScenario("entries", "sweep must not be empty");
  }
  return out;
}

std::vector<SweepEntry> load_sweep(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioParseError("cannot open sweep file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep(buf.str());
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  auto parse_u64 = [](std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw InvalidScenario("seeds", "invalid seed '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<std::uint64_t> seeds;
  if (text.find(',') == std::string_view::npos) {
    if (text.empty()) {
      throw InvalidScenario("seeds", "seed list must not be empty");
    }
    const std::uint64_t n = parse_u64(text);
    for (std::uint64_t s = 0; s < n; ++s) {
      seeds.push_back(s);
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      seeds.push_back(parse_u64(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  if (seeds.empty()) {
    throw InvalidScenario("seeds", "seed list must not be empty");
  }
  return seeds;
}

double median(std::vector<double> values) {
  if (values.empty()) {
    return std::nan("");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::size_t threads_from_env() {
  if (const char* env = std::getenv("CBFRRT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CompareResult compare(const ScenarioFile& file, std::span<const SweepEntry> sweep,
                      std::span<const std::uint64_t> seeds, std::size_t threads, const RunOptions& options) {
  if (seeds.empty()) {
    throw InvalidScenario("seeds", "seed list must not be empty");
  }
  if (sweep.empty()) {
    throw InvalidScenario("entries", "sweep must not be empty");
  }

  struct Job {
    std::size_t entry;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < sweep.size(); ++e) {
    std::vector<std::uint64_t> sorted(seeds.begin(), seeds.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::uint64_t s : sorted) {
      jobs.push_back({e, s});
    }
  }

  std::vector<std::optional<RunReport>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const SweepEntry& entry = sweep[jobs[i].entry];
      RunOptions opt = options;
      opt.step = entry.step;
      try {
        results[i] = run(file, entry.algorithm, jobs[i].seed, opt).report;
      } catch (const std::exception&) {
        results[i] = std::nullopt;
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
    worker();
  }

  CompareResult out;
  for (std::size_t e = 0; e < sweep.size(); ++e) {
    CompareRow row;
    row.algorithm = std::string(algorithm_name(sweep[e].algorithm));
    row.step = sweep[e].step;
    std::vector<double> wall, verts, iters, lengths;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].entry != e) {
        continue;
      }
      ++row.runs;
      if (!results[i]) {
        ++row.errors;
        continue;
      }
      const RunReport& r = *results[i];
      out.runs.push_back(r);
      wall.push_back(r.wall_time);
      verts.push_back(static_cast<double>(r.vertex_count));
      iters.push_back(static_cast<double>(r.iterations));
      if (r.success) {
        ++row.successes;
        lengths.push_back(*r.path_length);
        if (!r.audit_pass) {
          ++row.audit_failures;
        }
      }
    }
    row.median_wall_time = median(wall);
    row.median_vertex_count = median(verts);
    row.median_iterations = median(iters);
    if (!lengths.empty()) {
      row.median_path_length = median(lengths);
    }
    out.rows.push_back(row);
  }
  return out;
}

std::string comparison_csv(const std::vector<CompareRow>& rows) {
  std::string out =
      "algorithm,step,runs,successes,errors,success_rate,median_wall_time_s,median_vertex_count,"
      "median_iterations,median_path_length_m,audit_failures,audit_failure_rate\n";
  for (const CompareRow& r : rows) {
    const double success_rate = r.runs ? static_cast<double>(r.successes) / static_cast<double>(r.runs) : 0.0;
    const double audit_rate =
        r.successes ? static_cast<double>(r.audit_failures) / static_cast<double>(r.successes) : 0.0;
    out += r.algorithm + "," + format_double(r.step) + "," + std::to_string(r.runs) + "," +
           std::to_string(r.successes) + "," + std::to_string(r.errors) + "," + format_double(success_rate) + "," +
           format_double(r.median_wall_time) + "," + format_double(r.median_vertex_count) + "," +
           format_double(r.median_iterations) + "," +
           (r.median_path_length ? format_double(*r.median_path_length) : std::string()) + "," +
           std::to_string(r.audit_failures) + "," + format_double(audit_rate) + "\n";
  }
  return out;
}

std::string runs_csv(const std::vector<RunReport>& runs) {
  std::string out =
      "algorithm,step,seed,success,wall_time_s,iterations,vertex_count,path_length_m,path_duration_s,"
      "min_barrier,audit_pass\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const RunReport& r : runs) {
    out += r.algorithm + "," + format_double(r.step) + "," + std::to_string(r.seed) + "," +
           (r.success ? "1" : "0") + "," + format_double(r.wall_time) + "," + std::to_string(r.iterations) + "," +
           std::to_string(r.vertex_count) + "," + opt(r.path_length) + "," + opt(r.path_duration) + "," +
           opt(r.min_barrier) + "," + (r.audit_pass ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace cbfrrt
