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

// Command line front end: plan, compare, audit.
//
// Exit codes: 0 success, 1 audit failed (audit command), 2 planner exhausted,
// 3 invalid input, 4 internal error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cbfrrt/audit.hpp"
#include "cbfrrt/harness.hpp"
#include "cbfrrt/scenario.hpp"
#include "cbfrrt/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFailed = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitInternal = 4;

struct Overrides {
  std::optional<double> dt;
  std::optional<std::size_t> max_iters;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--dt", o.dt, "Integration step override (s)")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", o.max_iters, "Iteration budget override")->check(CLI::PositiveNumber);
}

int run_plan(const std::string& scenario_path, const std::string& algorithm, std::uint64_t seed,
             const std::string& out_dir, const Overrides& o) {
  const cbfrrt::ScenarioFile file = cbfrrt::load_scenario(scenario_path);
  cbfrrt::RunOptions options;
  options.dt = o.dt;
  options.max_iters = o.max_iters;
  const cbfrrt::RunOutput out = cbfrrt::run(file, cbfrrt::parse_algorithm(algorithm), seed, options);
  cbfrrt::write_run_artifacts(out, out_dir);
  const cbfrrt::RunReport& r = out.report;
  std::cout << r.algorithm << " seed=" << r.seed << (r.success ? " success" : " exhausted")
            << " iterations=" << r.iterations << " vertices=" << r.vertex_count << " wall_time=" << r.wall_time
            << "s";
  if (r.success) {
    std::cout << " path_length=" << *r.path_length << " audit=" << (r.audit_pass ? "pass" : "FAIL");
    if (r.min_barrier) {
      std::cout << " min_barrier=" << *r.min_barrier;
    }
  }
  std::cout << "\n";
  return r.success ? kExitOk : kExitExhausted;
}

int run_compare(const std::string& scenario_path, const std::string& sweep_path, const std::string& seeds,
                const std::string& out_dir, const Overrides& o) {
  const cbfrrt::ScenarioFile file = cbfrrt::load_scenario(scenario_path);
  const auto sweep = cbfrrt::load_sweep(sweep_path);
  const auto seed_list = cbfrrt::parse_seeds(seeds);
  cbfrrt::RunOptions options;
  options.dt = o.dt;
  options.max_iters = o.max_iters;
  const cbfrrt::CompareResult result =
      cbfrrt::compare(file, sweep, seed_list, cbfrrt::threads_from_env(), options);
  std::filesystem::create_directories(out_dir);
  const std::string table = cbfrrt::comparison_csv(result.rows);
  cbfrrt::write_file_atomic(std::filesystem::path(out_dir) / "comparison.csv", table);
  cbfrrt::write_file_atomic(std::filesystem::path(out_dir) / "runs.csv", cbfrrt::runs_csv(result.runs));
  std::cout << table;
  return kExitOk;
}

int run_audit(const std::string& trajectory_path, const std::string& scenario_path, std::optional<double> dt_audit) {
  const cbfrrt::ScenarioFile file = cbfrrt::load_scenario(scenario_path);
  const cbfrrt::Trajectory traj = cbfrrt::load_trajectory_csv(trajectory_path);
  const cbfrrt::AuditResult audit =
      cbfrrt::audit_trajectory(traj, file.scenario.obstacles, dt_audit.value_or(file.effective_dt_audit()));
  std::cout << (audit.pass ? "pass" : "FAIL") << " min_barrier=" << audit.min_barrier << " samples=" << traj.size()
            << "\n";
  return audit.pass ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier-certified sampling-based planning for a unicycle among moving disks"};
  app.require_subcommand(1);

  std::string scenario;
  std::string algorithm = "cbf-rrt";
  std::uint64_t seed = 0;
  std::string out_dir;
  Overrides plan_overrides;
  CLI::App* plan = app.add_subcommand("plan", "Run one planner and write trajectory, tree and report files");
  plan->add_option("--scenario", scenario, "Scenario JSON")->required();
  plan->add_option("--algorithm", algorithm, "cbf-rrt | rrt | rrt-star")
      ->check(CLI::IsMember({"cbf-rrt", "rrt", "rrt-star", "rrt*"}));
  plan->add_option("--seed", seed, "RNG seed");
  plan->add_option("--out", out_dir, "Output directory")->required();
  add_overrides(plan, plan_overrides);

  std::string sweep;
  std::string seeds = "20";
  Overrides compare_overrides;
  CLI::App* cmp = app.add_subcommand("compare", "Run an algorithm/step sweep over several seeds");
  cmp->add_option("--scenario", scenario, "Scenario JSON")->required();
  cmp->add_option("--sweep", sweep, "Sweep JSON")->required();
  cmp->add_option("--seeds", seeds, "Seed count N (0..N-1) or comma-separated list");
  cmp->add_option("--out", out_dir, "Output directory")->required();
  add_overrides(cmp, compare_overrides);

  std::string trajectory;
  std::optional<double> dt_audit;
  CLI::App* aud = app.add_subcommand("audit", "Re-check a trajectory CSV against a scenario's obstacles");
  aud->add_option("--trajectory", trajectory, "Trajectory CSV")->required();
  aud->add_option("--scenario", scenario, "Scenario JSON")->required();
  aud->add_option("--dt-audit", dt_audit, "Audit spacing (s)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*plan) {
      return run_plan(scenario, algorithm, seed, out_dir, plan_overrides);
    }
    if (*cmp) {
      return run_compare(scenario, sweep, seeds, out_dir, compare_overrides);
    }
    return run_audit(trajectory, scenario, dt_audit);
  } catch (const cbfrrt::ScenarioParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const cbfrrt::InvalidScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const cbfrrt::TrajectoryParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
