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

#include "cbfrrt/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace cbfrrt {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  std::string out = kTrajectoryCsvHeader;
  out += '\n';
  for (const TrajectorySample& s : trajectory.samples) {
    for (double v : {s.t, s.state.x1, s.state.x2, s.state.theta, s.control.v}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(s.control.omega);
    out += '\n';
  }
  return out;
}

namespace {

double parse_field(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw TrajectoryParseError("line " + std::to_string(line) + ": invalid number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

Trajectory parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw TrajectoryParseError("empty trajectory file");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kTrajectoryCsvHeader) {
    throw TrajectoryParseError(std::string("expected header '") + kTrajectoryCsvHeader + "'");
  }
  Trajectory out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    double f[6];
    std::size_t start = 0;
    for (int i = 0; i < 6; ++i) {
      const std::size_t comma = line.find(',', start);
      if ((i < 5) != (comma != std::string::npos)) {
        throw TrajectoryParseError("line " + std::to_string(lineno) + ": expected 6 fields");
      }
      const std::size_t end = (i < 5) ? comma : line.size();
      f[i] = parse_field(std::string_view(line).substr(start, end - start), lineno);
      start = end + 1;
    }
    if (!out.empty() && !(f[0] > out.back().t)) {
      throw TrajectoryParseError("line " + std::to_string(lineno) + ": timestamps must be strictly increasing");
    }
    out.samples.push_back({f[0], {f[1], f[2], f[3]}, {f[4], f[5]}});
  }
  return out;
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw TrajectoryParseError("cannot open trajectory file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str());
}

json plan_tree_to_json(const PlanTree& tree) {
  json vertices = json::array();
  for (const Vertex& v : tree.vertices()) {
    vertices.push_back({{"id", v.id},
                        {"parent", v.parent ? json(*v.parent) : json(nullptr)},
                        {"edge", v.edge ? json(*v.edge) : json(nullptr)},
                        {"time", v.time},
                        {"state", {v.state.x1, v.state.x2, v.state.theta}}});
  }
  json edges = json::array();
  for (const Edge& e : tree.edges()) {
    json samples = json::array();
    for (const TrajectorySample& s : e.trajectory.samples) {
      samples.push_back({s.t, s.state.x1, s.state.x2, s.state.theta, s.control.v, s.control.omega});
    }
    edges.push_back({{"id", e.id}, {"parent", e.parent}, {"child", e.child}, {"samples", samples}});
  }
  return {{"kind", "time-stamped"},
          {"sample_fields", {"t", "x1", "x2", "theta", "v", "omega"}},
          {"vertices", vertices},
          {"edges", edges}};
}

json geom_tree_to_json(const GeomTree& tree) {
  json vertices = json::array();
  json edges = json::array();
  for (const GeomVertex& v : tree.vertices) {
    vertices.push_back({{"id", v.id},
                        {"parent", v.parent ? json(*v.parent) : json(nullptr)},
                        {"position", {v.position.x, v.position.y}},
                        {"cost", v.cost}});
    if (v.parent) {
      edges.push_back({{"parent", *v.parent}, {"child", v.id}});
    }
  }
  return {{"kind", "geometric"}, {"vertices", vertices}, {"edges", edges}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cbfrrt
