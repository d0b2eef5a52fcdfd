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

#include "cbfrrt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cbfrrt {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Typed access to one JSON object that remembers which keys were consumed,
// so that unknown keys can be rejected with their full path.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ScenarioParseError((path_.empty() ? std::string("document") : path_) + ": expected an object");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      throw ScenarioParseError(join(path_, key) + ": missing required field");
    }
    return j_.at(key);
  }

  double number(const std::string& key) { return as_number(get(key), join(path_, key)); }

  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = get(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ScenarioParseError(join(path_, key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::uint64_t unsigned_or(const std::string& key, std::uint64_t fallback) {
    return has(key) ? unsigned_integer(key) : fallback;
  }

  std::string string(const std::string& key) {
    const json& v = get(key);
    if (!v.is_string()) {
      throw ScenarioParseError(join(path_, key) + ": expected a string");
    }
    return v.get<std::string>();
  }

  ObjectReader object(const std::string& key) { return ObjectReader(get(key), join(path_, key)); }

  std::vector<double> numbers(const std::string& key, std::size_t n) {
    const json& v = get(key);
    const std::string where = join(path_, key);
    if (!v.is_array() || v.size() != n) {
      throw ScenarioParseError(where + ": expected an array of " + std::to_string(n) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) {
        throw ScenarioParseError(join(path_, item.key()) + ": unknown field");
      }
    }
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
      throw ScenarioParseError(where + ": expected a number");
    }
    return v.get<double>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Point2 point(const std::vector<double>& v) { return {v[0], v[1]}; }

ReferenceSampling parse_reference(ObjectReader r) {
  ReferenceSampling ref;
  const std::string kind = r.string("kind");
  if (kind == "constant") {
    ref.kind = ReferenceSampling::Kind::kConstant;
  } else if (kind == "uniform") {
    ref.kind = ReferenceSampling::Kind::kUniform;
    const auto range = r.numbers("omega_range", 2);
    ref.omega_range = {range[0], range[1]};
  } else if (kind == "choice") {
    ref.kind = ReferenceSampling::Kind::kChoice;
    const json& arr = r.get("choices");
    const std::string where = join(r.path(), "choices");
    if (!arr.is_array()) {
      throw ScenarioParseError(where + ": expected an array of [v, omega] pairs");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string item = where + "[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 2) {
        throw ScenarioParseError(item + ": expected [v, omega]");
      }
      ref.choices.push_back({ObjectReader::as_number(arr[i][0], item + "[0]"),
                             ObjectReader::as_number(arr[i][1], item + "[1]")});
    }
  } else {
    throw ScenarioParseError(join(r.path(), "kind") + ": expected one of constant, uniform, choice");
  }
  r.finish();
  return ref;
}

json reference_to_json(const ReferenceSampling& ref) {
  switch (ref.kind) {
    case ReferenceSampling::Kind::kUniform:
      return {{"kind", "uniform"}, {"omega_range", {ref.omega_range.lo, ref.omega_range.hi}}};
    case ReferenceSampling::Kind::kChoice: {
      json choices = json::array();
      for (const ControlInput& c : ref.choices) {
        choices.push_back({c.v, c.omega});
      }
      return {{"kind", "choice"}, {"choices", choices}};
    }
    case ReferenceSampling::Kind::kConstant:
      break;
  }
  return {{"kind", "constant"}};
}

PlannerParams parse_planner(ObjectReader r) {
  PlannerParams p;
  p.t_h = r.number("t_h");
  p.dt = r.number_or("dt", p.dt);
  p.sigma2 = r.number("sigma2");
  p.epsilon = r.number("epsilon");
  p.gains.k1 = r.number("k1");
  p.gains.k2 = r.number("k2");
  p.v_const = r.number("v");
  p.omega_ref = r.number_or("omega_ref", p.omega_ref);
  if (r.has("omega_bounds")) {
    const auto b = r.numbers("omega_bounds", 2);
    p.omega_bounds = {b[0], b[1]};
  }
  p.max_iters = r.unsigned_or("max_iters", p.max_iters);
  p.seed = r.unsigned_or("seed", p.seed);
  if (r.has("reference")) {
    p.reference = parse_reference(r.object("reference"));
  }
  r.finish();
  return p;
}

BaselineParams parse_baseline(ObjectReader r) {
  BaselineParams b;
  b.delta_d = r.number_or("delta_d", b.delta_d);
  b.max_iters = r.unsigned_or("max_iters", b.max_iters);
  b.seed = r.unsigned_or("seed", b.seed);
  if (r.has("sample_bounds")) {
    ObjectReader sb = r.object("sample_bounds");
    b.sample_bounds = {point(sb.numbers("lo", 2)), point(sb.numbers("hi", 2))};
    sb.finish();
  }
  b.rewire_gamma = r.number_or("rewire_gamma", b.rewire_gamma);
  b.goal_bias = r.number_or("goal_bias", b.goal_bias);
  r.finish();
  return b;
}

}  // namespace

double min_center_distance(const CircularObstacle& obstacle, const Point2& point, double t0, double t1) {
  const Point2 c0 = obstacle_center_at(obstacle, t0);
  const double dx = c0.x - point.x;
  const double dy = c0.y - point.y;
  const double vv = obstacle.velocity.x * obstacle.velocity.x + obstacle.velocity.y * obstacle.velocity.y;
  double s = 0.0;
  if (vv > 0.0) {
    s = std::clamp(-(dx * obstacle.velocity.x + dy * obstacle.velocity.y) / vv, 0.0, t1 - t0);
  }
  return std::hypot(dx + s * obstacle.velocity.x, dy + s * obstacle.velocity.y);
}

void check_scenario_feasible(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  if (!(file.goal_clear_horizon >= 0.0) || !std::isfinite(file.goal_clear_horizon)) {
    throw InvalidScenario("goal_clear_horizon", "must be non-negative");
  }
  if (file.dt_audit && (!(*file.dt_audit > 0.0) || !std::isfinite(*file.dt_audit))) {
    throw InvalidScenario("audit.dt_audit", "must be positive");
  }
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    if (barrier_value(s.x_init, s.obstacles[i], s.t_init) < 0.0) {
      throw InfeasibleScenario("x_init", "initial state lies inside obstacles[" + std::to_string(i) + "]");
    }
  }
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const CircularObstacle& o = s.obstacles[i];
    const double d = min_center_distance(o, s.goal, s.t_init, s.t_init + file.goal_clear_horizon);
    if (d < o.radius + s.params.epsilon) {
      throw InfeasibleScenario("goal", "goal region intersects obstacles[" + std::to_string(i) + "]");
    }
  }
}

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("malformed JSON: ") + e.what());
  }

  ScenarioFile file;
  ObjectReader r(doc, "");
  const std::uint64_t schema = r.unsigned_integer("schema");
  if (schema != kScenarioSchemaVersion) {
    throw ScenarioParseError("schema: unsupported version " + std::to_string(schema));
  }
  if (r.has("name")) {
    file.name = r.string("name");
  }
  const auto x = r.numbers("x_init", 3);
  file.scenario.x_init = {x[0], x[1], x[2]};
  file.scenario.t_init = r.number_or("t_init", 0.0);
  file.scenario.goal = point(r.numbers("goal", 2));

  const json& obstacles = r.get("obstacles");
  if (!obstacles.is_array()) {
    throw ScenarioParseError("obstacles: expected an array");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    ObjectReader o(obstacles[i], "obstacles[" + std::to_string(i) + "]");
    CircularObstacle obs;
    obs.center0 = point(o.numbers("center", 2));
    obs.velocity = o.has("velocity") ? point(o.numbers("velocity", 2)) : Point2{};
    obs.radius = o.number("radius");
    o.finish();
    file.scenario.obstacles.push_back(obs);
  }

  file.scenario.params = parse_planner(r.object("planner"));
  if (r.has("baseline")) {
    file.baseline = parse_baseline(r.object("baseline"));
  }
  file.goal_clear_horizon = r.number_or("goal_clear_horizon", file.goal_clear_horizon);
  if (r.has("audit")) {
    ObjectReader a = r.object("audit");
    if (a.has("dt_audit")) {
      const json& v = a.get("dt_audit");
      if (!v.is_null()) {
        file.dt_audit = ObjectReader::as_number(v, "audit.dt_audit");
      }
    }
    a.finish();
  }
  if (r.has("metadata")) {
    file.metadata = r.get("metadata");
    if (!file.metadata.is_object()) {
      throw ScenarioParseError("metadata: expected an object");
    }
  }
  r.finish();

  validate_scenario(file.scenario);
  validate_baseline_params(file.baseline);
  check_scenario_feasible(file);
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioParseError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json scenario_to_json(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  const PlannerParams& p = s.params;
  json obstacles = json::array();
  for (const CircularObstacle& o : s.obstacles) {
    obstacles.push_back({{"center", {o.center0.x, o.center0.y}},
                         {"velocity", {o.velocity.x, o.velocity.y}},
                         {"radius", o.radius}});
  }
  json planner = {{"t_h", p.t_h},
                  {"dt", p.dt},
                  {"sigma2", p.sigma2},
                  {"epsilon", p.epsilon},
                  {"k1", p.gains.k1},
                  {"k2", p.gains.k2},
                  {"v", p.v_const},
                  {"omega_ref", p.omega_ref},
                  {"omega_bounds", {p.omega_bounds.lo, p.omega_bounds.hi}},
                  {"max_iters", p.max_iters},
                  {"seed", p.seed},
                  {"reference", reference_to_json(p.reference)}};
  const BaselineParams& b = file.baseline;
  json baseline = {{"delta_d", b.delta_d},
                   {"max_iters", b.max_iters},
                   {"seed", b.seed},
                   {"sample_bounds",
                    {{"lo", {b.sample_bounds.lo.x, b.sample_bounds.lo.y}},
                     {"hi", {b.sample_bounds.hi.x, b.sample_bounds.hi.y}}}},
                   {"rewire_gamma", b.rewire_gamma},
                   {"goal_bias", b.goal_bias}};
  json doc = {{"schema", kScenarioSchemaVersion},
              {"name", file.name},
              {"x_init", {s.x_init.x1, s.x_init.x2, s.x_init.theta}},
              {"t_init", s.t_init},
              {"goal", {s.goal.x, s.goal.y}},
              {"obstacles", obstacles},
              {"planner", planner},
              {"baseline", baseline},
              {"goal_clear_horizon", file.goal_clear_horizon},
              {"audit", {{"dt_audit", file.dt_audit ? json(*file.dt_audit) : json(nullptr)}}},
              {"metadata", file.metadata}};
  return doc;
}

std::string write_scenario(const ScenarioFile& file) { return scenario_to_json(file).dump(2) + "\n"; }

}  // namespace cbfrrt
