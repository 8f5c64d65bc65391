// Copyright 2026 The RoboEnergy Authors
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

#include "roboenergy/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "roboenergy/error.hpp"

namespace roboenergy {

using Json = nlohmann::ordered_json;

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "not a number: '" + s + "'");
  }
  return v;
}

JointVector joints_from_json(const Json& v, const char* where) {
  if (!v.is_array() || v.empty() || v.size() > kMaxDof) {
    throw Error(ErrorCode::kParse, std::string(where) + ": expected 1..6 numbers");
  }
  JointVector q(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw Error(ErrorCode::kParse, std::string(where) + ": not a number");
    q[static_cast<int>(i)] = v[i].get<double>();
  }
  return q;
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& traj) {
  const int n = traj.dof();
  std::ostringstream out;
  out << "t";
  for (const char* prefix : {"q", "qd", "qdd"}) {
    for (int j = 1; j <= n; ++j) out << ',' << prefix << j;
  }
  out << '\n';
  for (const TrajectorySample& s : traj.samples) {
    out << format_double(s.t);
    for (const JointVector* v : {&s.q, &s.qd, &s.qdd}) {
      for (int j = 0; j < n; ++j) out << ',' << format_double((*v)[j]);
    }
    out << '\n';
  }
  return out.str();
}

Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty trajectory CSV");
  const auto header = split(line, ',');
  if (header.empty() || header[0] != "t" || (header.size() - 1) % 3 != 0) {
    throw Error(ErrorCode::kParse, "trajectory CSV header must be t,q..,qd..,qdd..");
  }
  const int n = static_cast<int>((header.size() - 1) / 3);
  if (n < 1 || n > kMaxDof) throw Error(ErrorCode::kParse, "trajectory CSV: 1..6 joints");
  for (int j = 0; j < n; ++j) {
    if (header[1 + j] != "q" + std::to_string(j + 1) ||
        header[1 + n + j] != "qd" + std::to_string(j + 1) ||
        header[1 + 2 * n + j] != "qdd" + std::to_string(j + 1)) {
      throw Error(ErrorCode::kParse, "trajectory CSV: unexpected column names");
    }
  }
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, "trajectory CSV: ragged row");
    }
    TrajectorySample s;
    s.t = parse_double(cells[0]);
    s.q.resize(n);
    s.qd.resize(n);
    s.qdd.resize(n);
    for (int j = 0; j < n; ++j) {
      s.q[j] = parse_double(cells[1 + j]);
      s.qd[j] = parse_double(cells[1 + n + j]);
      s.qdd[j] = parse_double(cells[1 + 2 * n + j]);
    }
    traj.samples.push_back(std::move(s));
  }
  if (traj.size() >= 2) {
    traj.dt = (traj.back().t - traj.front().t) / static_cast<double>(traj.size() - 1);
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << trajectory_to_csv(traj);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  return trajectory_from_csv(read_file(path));
}

std::string program_to_json(const std::vector<MotionCommand>& program) {
  Json arr = Json::array();
  for (const MotionCommand& c : program) {
    Json cmd;
    cmd["kind"] = std::string(to_string(c.kind));
    if (c.kind == CommandKind::kMoveJoint) {
      Json q = Json::array();
      for (int j = 0; j < c.joint_target.size(); ++j) q.push_back(c.joint_target[j]);
      cmd["target"] = std::move(q);
    } else {
      const auto& p = c.pose_target.position;
      const auto& o = c.pose_target.orientation;
      cmd["target"] = {{"position", {p.x(), p.y(), p.z()}},
                       {"orientation", {o.w(), o.x(), o.y(), o.z()}}};
    }
    cmd["v_limit"] = c.v_limit;
    cmd["a_limit"] = c.a_limit;
    arr.push_back(std::move(cmd));
  }
  return arr.dump(2) + "\n";
}

std::vector<MotionCommand> program_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!root.is_array()) throw Error(ErrorCode::kParse, "program must be a JSON array");
  std::vector<MotionCommand> program;
  for (const Json& cmd : root) {
    if (!cmd.is_object()) throw Error(ErrorCode::kParse, "program entries must be objects");
    for (const auto& [key, _] : cmd.items()) {
      if (key != "kind" && key != "target" && key != "v_limit" && key != "a_limit") {
        throw Error(ErrorCode::kParse, "program: unknown field '" + key + "'");
      }
    }
    MotionCommand c;
    c.kind = command_kind_from_string(cmd.at("kind").get<std::string>());
    c.v_limit = cmd.at("v_limit").get<double>();
    c.a_limit = cmd.at("a_limit").get<double>();
    if (!(c.v_limit > 0.0) || !(c.a_limit > 0.0)) {
      throw Error(ErrorCode::kParse, "program: v_limit and a_limit must be > 0");
    }
    const Json& target = cmd.at("target");
    if (c.kind == CommandKind::kMoveJoint) {
      c.joint_target = joints_from_json(target, "MoveJoint target");
    } else {
      const Json& p = target.at("position");
      const Json& o = target.at("orientation");
      if (!p.is_array() || p.size() != 3 || !o.is_array() || o.size() != 4) {
        throw Error(ErrorCode::kParse, "MoveLinear target needs position[3], orientation[4]");
      }
      c.pose_target.position = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
      c.pose_target.orientation = Eigen::Quaterniond(
          o[0].get<double>(), o[1].get<double>(), o[2].get<double>(), o[3].get<double>());
      if (std::abs(c.pose_target.orientation.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::kParse, "MoveLinear orientation must be a unit quaternion");
      }
    }
    program.push_back(std::move(c));
  }
  return program;
}

std::vector<MotionCommand> read_program(const std::filesystem::path& path) {
  return program_from_json(read_file(path));
}

}  // namespace roboenergy
