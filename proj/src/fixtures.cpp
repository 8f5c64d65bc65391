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

#include "roboenergy/fixtures.hpp"

#include "json_util.hpp"
#include "roboenergy/kinematics.hpp"
#include "roboenergy/model_io.hpp"

namespace roboenergy {

using detail::Json;

namespace {

Payload payload_from(const Json& v, const std::string& where) {
  detail::require_keys(v, {"mass", "com_offset"}, {}, where);
  Payload p;
  p.mass = detail::get_number(v, "mass", where);
  const JointVector c = detail::get_joints(v.at("com_offset"), where + ".com_offset");
  if (c.size() != 3) throw Error(ErrorCode::kParse, where + ".com_offset: expected 3 numbers");
  p.com_offset = c.head<3>();
  return p;
}

PlannedMove planned_from(const Json& v, const std::string& where) {
  detail::require_keys(v, {"q_start", "q_end", "v_limit", "a_limit", "payload"}, {}, where);
  PlannedMove m;
  m.q_start = detail::get_joints(v.at("q_start"), where + ".q_start");
  m.q_end = detail::get_joints(v.at("q_end"), where + ".q_end");
  m.v_limit = detail::get_number(v, "v_limit", where);
  m.a_limit = detail::get_number(v, "a_limit", where);
  m.payload = payload_from(v.at("payload"), where + ".payload");
  return m;
}

}  // namespace

Fixtures fixtures_from_json(const std::string& text) {
  const Json root = detail::parse_json(text);
  detail::require_keys(root,
                       {"schema", "robot", "reference_standby", "moves", "command_pair",
                        "descent", "motion_time", "vertical_descent"},
                       {"note"}, "fixtures");
  if (root.at("schema") != "fixtures-v1") {
    throw Error(ErrorCode::kParse, "fixtures.schema: expected \"fixtures-v1\"");
  }
  Fixtures f;
  f.robot = detail::get_string(root, "robot", "fixtures");
  f.reference_standby = detail::get_joints(root.at("reference_standby"), "reference_standby");

  if (!root.at("moves").is_array()) throw Error(ErrorCode::kParse, "fixtures.moves: expected array");
  for (const Json& m : root.at("moves")) {
    detail::require_keys(m, {"name", "q_start", "q_end"}, {}, "fixtures.moves[]");
    f.moves.push_back({detail::get_string(m, "name", "moves[]"),
                       detail::get_joints(m.at("q_start"), "moves[].q_start"),
                       detail::get_joints(m.at("q_end"), "moves[].q_end")});
  }

  const Json& cp = root.at("command_pair");
  detail::require_keys(cp, {"q_start", "q_end", "limits", "payloads"}, {}, "command_pair");
  f.command_pair.q_start = detail::get_joints(cp.at("q_start"), "command_pair.q_start");
  f.command_pair.q_end = detail::get_joints(cp.at("q_end"), "command_pair.q_end");
  const Json& lim = cp.at("limits");
  detail::require_keys(lim, {"joint_velocity", "joint_acceleration", "linear_velocity",
                             "linear_acceleration"}, {}, "command_pair.limits");
  f.command_pair.limits = {detail::get_number(lim, "joint_velocity", "limits"),
                           detail::get_number(lim, "joint_acceleration", "limits"),
                           detail::get_number(lim, "linear_velocity", "limits"),
                           detail::get_number(lim, "linear_acceleration", "limits")};
  for (const Json& p : cp.at("payloads")) {
    if (!p.is_number()) throw Error(ErrorCode::kParse, "command_pair.payloads: numbers expected");
    f.command_pair.payloads.push_back(p.get<double>());
  }

  f.descent = planned_from(root.at("descent"), "descent");

  const Json& mt = root.at("motion_time");
  detail::require_keys(mt, {"move", "k_min", "k_max"}, {}, "motion_time");
  f.motion_time.move = planned_from(mt.at("move"), "motion_time.move");
  f.motion_time.k_min = detail::get_number(mt, "k_min", "motion_time");
  f.motion_time.k_max = detail::get_number(mt, "k_max", "motion_time");

  const Json& vd = root.at("vertical_descent");
  detail::require_keys(vd, {"q_start", "drop", "v_limit", "a_limit", "payload"}, {},
                       "vertical_descent");
  f.vertical_descent.q_start = detail::get_joints(vd.at("q_start"), "vertical_descent.q_start");
  f.vertical_descent.drop = detail::get_number(vd, "drop", "vertical_descent");
  f.vertical_descent.v_limit = detail::get_number(vd, "v_limit", "vertical_descent");
  f.vertical_descent.a_limit = detail::get_number(vd, "a_limit", "vertical_descent");
  f.vertical_descent.payload = payload_from(vd.at("payload"), "vertical_descent.payload");
  return f;
}

Fixtures load_fixtures(const std::filesystem::path& path) {
  return fixtures_from_json(detail::read_text(path));
}

std::filesystem::path fixtures_path_for(const RobotModel& model) {
  std::string stem = model.name;
  for (char& c : stem) {
    if (c == '-') c = '_';
  }
  return data_dir() / "fixtures" / (stem + ".json");
}

Trajectory plan(const RobotModel& model, const PlannedMove& move) {
  return plan_movej(model, move.q_start, move.q_end, move.v_limit, move.a_limit);
}

Trajectory plan(const RobotModel& model, const VerticalDescentFixture& fixture) {
  Pose target = forward_kinematics(model, fixture.q_start);
  target.position.z() -= fixture.drop;
  return plan_movel(model, fixture.q_start, target, fixture.v_limit, fixture.a_limit);
}

}  // namespace roboenergy
