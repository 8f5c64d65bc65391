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

#include "roboenergy/model_io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "roboenergy/error.hpp"

namespace roboenergy {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) {
  throw Error(ErrorCode::kParse, msg);
}

void expect_keys(const Json& obj, const std::set<std::string>& keys,
                 const std::string& where) {
  if (!obj.is_object()) parse_error(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) parse_error(where + ": unknown field '" + key + "'");
  }
  for (const auto& key : keys) {
    if (!obj.contains(key)) parse_error(where + ": missing field '" + key + "'");
  }
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = obj.at(key);
  if (!v.is_number()) parse_error(where + "." + key + ": expected a number");
  return v.get<double>();
}

Eigen::Vector3d vec3(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) parse_error(where + ": expected 3 numbers");
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) parse_error(where + ": expected 3 numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

Eigen::Matrix3d mat3(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) parse_error(where + ": expected 3x3 array");
  Eigen::Matrix3d out;
  for (int r = 0; r < 3; ++r) out.row(r) = vec3(v[r], where).transpose();
  return out;
}

Json to_array(const Eigen::Vector3d& v) { return Json::array({v[0], v[1], v[2]}); }

Json to_array(const Eigen::Matrix3d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(to_array(Eigen::Vector3d(m.row(r))));
  return rows;
}

}  // namespace

RobotModel robot_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(e.what());
  }
  expect_keys(root,
              {"schema", "name", "description", "convention", "gravity",
               "p_baseline", "flange", "links", "motors", "limits"},
              "robot");
  if (root.at("schema") != kRobotSchema) {
    parse_error("robot.schema: expected \"robot-v1\"");
  }
  if (root.at("convention") != "modified-dh") {
    parse_error("robot.convention: only \"modified-dh\" is supported");
  }
  if (!root.at("name").is_string() || !root.at("description").is_string()) {
    parse_error("robot.name and robot.description must be strings");
  }

  RobotModel model;
  model.name = root.at("name").get<std::string>();
  model.description = root.at("description").get<std::string>();
  model.gravity = vec3(root.at("gravity"), "robot.gravity");
  model.p_baseline = number(root, "p_baseline", "robot");

  const Json& flange = root.at("flange");
  expect_keys(flange, {"a", "d", "alpha"}, "robot.flange");
  model.flange = {number(flange, "a", "flange"), number(flange, "d", "flange"),
                  number(flange, "alpha", "flange")};

  for (const char* key : {"links", "motors", "limits"}) {
    if (!root.at(key).is_array()) parse_error(std::string("robot.") + key + ": expected array");
  }
  int index = 0;
  for (const Json& l : root.at("links")) {
    const std::string where = "robot.links[" + std::to_string(index++) + "]";
    expect_keys(l, {"dh_a", "dh_d", "dh_alpha", "mass", "com", "inertia"}, where);
    LinkParams p;
    p.dh_a = number(l, "dh_a", where);
    p.dh_d = number(l, "dh_d", where);
    p.dh_alpha = number(l, "dh_alpha", where);
    p.mass = number(l, "mass", where);
    p.com = vec3(l.at("com"), where + ".com");
    p.inertia = mat3(l.at("inertia"), where + ".inertia");
    model.links.push_back(p);
  }
  index = 0;
  for (const Json& m : root.at("motors")) {
    const std::string where = "robot.motors[" + std::to_string(index++) + "]";
    expect_keys(m, {"kt_eff", "r_winding", "visc_friction", "coul_friction",
                    "thermal_res", "thermal_tau"}, where);
    model.motors.push_back({number(m, "kt_eff", where), number(m, "r_winding", where),
                            number(m, "visc_friction", where),
                            number(m, "coul_friction", where),
                            number(m, "thermal_res", where),
                            number(m, "thermal_tau", where)});
  }
  index = 0;
  for (const Json& l : root.at("limits")) {
    const std::string where = "robot.limits[" + std::to_string(index++) + "]";
    expect_keys(l, {"q_min", "q_max", "v_max", "a_max"}, where);
    model.limits.push_back({number(l, "q_min", where), number(l, "q_max", where),
                            number(l, "v_max", where), number(l, "a_max", where)});
  }

  model.validate();
  return model;
}

std::string robot_to_json(const RobotModel& model) {
  Json root;
  root["schema"] = kRobotSchema;
  root["name"] = model.name;
  root["description"] = model.description;
  root["convention"] = "modified-dh";
  root["gravity"] = to_array(model.gravity);
  root["p_baseline"] = model.p_baseline;
  root["flange"] = {{"a", model.flange.a}, {"d", model.flange.d},
                    {"alpha", model.flange.alpha}};
  Json links = Json::array();
  for (const LinkParams& l : model.links) {
    links.push_back({{"dh_a", l.dh_a}, {"dh_d", l.dh_d}, {"dh_alpha", l.dh_alpha},
                     {"mass", l.mass}, {"com", to_array(l.com)},
                     {"inertia", to_array(l.inertia)}});
  }
  Json motors = Json::array();
  for (const MotorParams& m : model.motors) {
    motors.push_back({{"kt_eff", m.kt_eff}, {"r_winding", m.r_winding},
                      {"visc_friction", m.visc_friction},
                      {"coul_friction", m.coul_friction},
                      {"thermal_res", m.thermal_res},
                      {"thermal_tau", m.thermal_tau}});
  }
  Json limits = Json::array();
  for (const JointLimits& l : model.limits) {
    limits.push_back({{"q_min", l.q_min}, {"q_max", l.q_max},
                      {"v_max", l.v_max}, {"a_max", l.a_max}});
  }
  root["links"] = std::move(links);
  root["motors"] = std::move(motors);
  root["limits"] = std::move(limits);
  return root.dump(2) + "\n";
}

RobotModel load_robot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open robot file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return robot_from_json(buf.str());
}

void save_robot(const RobotModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << robot_to_json(model);
}

bool operator==(const RobotModel& a, const RobotModel& b) {
  if (a.name != b.name || a.description != b.description ||
      a.p_baseline != b.p_baseline || a.gravity != b.gravity ||
      a.flange.a != b.flange.a || a.flange.d != b.flange.d ||
      a.flange.alpha != b.flange.alpha || a.dof() != b.dof() ||
      a.motors.size() != b.motors.size() || a.limits.size() != b.limits.size()) {
    return false;
  }
  for (int i = 0; i < a.dof(); ++i) {
    const LinkParams& x = a.links[i];
    const LinkParams& y = b.links[i];
    if (x.dh_a != y.dh_a || x.dh_d != y.dh_d || x.dh_alpha != y.dh_alpha ||
        x.mass != y.mass || x.com != y.com || x.inertia != y.inertia) {
      return false;
    }
    const MotorParams& m = a.motors[i];
    const MotorParams& n = b.motors[i];
    if (m.kt_eff != n.kt_eff || m.r_winding != n.r_winding ||
        m.visc_friction != n.visc_friction || m.coul_friction != n.coul_friction ||
        m.thermal_res != n.thermal_res || m.thermal_tau != n.thermal_tau) {
      return false;
    }
    const JointLimits& p = a.limits[i];
    const JointLimits& q = b.limits[i];
    if (p.q_min != q.q_min || p.q_max != q.q_max || p.v_max != q.v_max ||
        p.a_max != q.a_max) {
      return false;
    }
  }
  return true;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("ROBOENERGY_DATA_DIR"); env && *env) {
    return env;
  }
  return ROBOENERGY_DATA_DIR;
}

}  // namespace roboenergy
