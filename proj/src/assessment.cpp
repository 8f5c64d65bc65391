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

#include "roboenergy/assessment.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json_util.hpp"
#include "roboenergy/kernels.hpp"
#include "roboenergy/kinematics.hpp"
#include "roboenergy/model_io.hpp"
#include "roboenergy/strategies.hpp"
#include "roboenergy/trajectory_io.hpp"

namespace roboenergy {

using detail::Json;

std::string_view to_string(Profile profile) {
  return profile == Profile::kNominal ? "nominal" : "energy_optimal";
}

Profile profile_from_string(std::string_view name) {
  if (name == "nominal") return Profile::kNominal;
  if (name == "energy_optimal") return Profile::kEnergyOptimal;
  throw Error(ErrorCode::kConfig, "unknown profile '" + std::string(name) + "'");
}

std::size_t AssessmentConfig::sweep_size() const {
  return configurations.size() * payloads.size() * commands.size() * v_limits.size() *
         a_limits.size() * profiles.size();
}

std::size_t AssessmentTable::feasible_count() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const AssessmentRow& r) { return r.feasible; }));
}

namespace {

constexpr ErrorCode kCfg = ErrorCode::kConfig;

const Json& non_empty_array(const Json& obj, const char* key) {
  const Json& v = obj.at(key);
  if (!v.is_array() || v.empty()) {
    throw Error(kCfg, std::string("sweeps.") + key + ": expected a non-empty array");
  }
  return v;
}

std::vector<LimitSetting> limit_settings(const Json& sweeps, const char* key) {
  std::vector<LimitSetting> out;
  for (const Json& v : non_empty_array(sweeps, key)) {
    const std::string where = std::string("sweeps.") + key + "[]";
    detail::require_keys(v, {"joint", "linear"}, {}, where, kCfg);
    LimitSetting s{detail::get_number(v, "joint", where, kCfg),
                   detail::get_number(v, "linear", where, kCfg)};
    if (!(s.joint > 0.0) || !(s.linear > 0.0)) throw Error(kCfg, where + ": limits must be > 0");
    out.push_back(s);
  }
  return out;
}

// Payload centre of mass in the flange frame used for every sweep point.
const Eigen::Vector3d kPayloadCom(0.0, 0.0, 0.05);

}  // namespace

AssessmentConfig assessment_config_from_json(const std::string& text,
                                             const std::filesystem::path& base_dir) {
  const Json root = detail::parse_json(text, kCfg);
  detail::require_keys(root, {"robot_file", "sweeps", "output_dir", "seed"}, {"k_max"},
                       "config", kCfg);
  AssessmentConfig c;
  c.robot_file = detail::get_string(root, "robot_file", "config", kCfg);
  if (c.robot_file.is_relative()) c.robot_file = base_dir / c.robot_file;
  c.output_dir = detail::get_string(root, "output_dir", "config", kCfg);
  if (c.output_dir.is_relative()) c.output_dir = base_dir / c.output_dir;
  if (!root.at("seed").is_number_unsigned()) {
    throw Error(kCfg, "config.seed: expected a non-negative integer");
  }
  c.seed = root.at("seed").get<std::uint64_t>();
  if (root.contains("k_max")) {
    c.k_max = detail::get_number(root, "k_max", "config", kCfg);
    if (!(c.k_max > 1.0)) throw Error(kCfg, "config.k_max must be > 1");
  }

  const Json& sweeps = root.at("sweeps");
  detail::require_keys(sweeps,
                       {"configurations", "payloads", "commands", "v_limits", "a_limits",
                        "profiles"},
                       {}, "sweeps", kCfg);
  for (const Json& v : non_empty_array(sweeps, "configurations")) {
    detail::require_keys(v, {"name", "q_start", "q_end"}, {}, "sweeps.configurations[]", kCfg);
    c.configurations.push_back(
        {detail::get_string(v, "name", "configurations[]", kCfg),
         detail::get_joints(v.at("q_start"), "configurations[].q_start", kCfg),
         detail::get_joints(v.at("q_end"), "configurations[].q_end", kCfg)});
  }
  for (const Json& v : non_empty_array(sweeps, "payloads")) {
    if (!v.is_number() || v.get<double>() < 0.0) {
      throw Error(kCfg, "sweeps.payloads: expected non-negative numbers");
    }
    c.payloads.push_back(v.get<double>());
  }
  for (const Json& v : non_empty_array(sweeps, "commands")) {
    if (!v.is_string()) throw Error(kCfg, "sweeps.commands: expected strings");
    try {
      c.commands.push_back(command_kind_from_string(v.get<std::string>()));
    } catch (const Error& e) {
      throw Error(kCfg, e.what());
    }
  }
  c.v_limits = limit_settings(sweeps, "v_limits");
  c.a_limits = limit_settings(sweeps, "a_limits");
  for (const Json& v : non_empty_array(sweeps, "profiles")) {
    if (!v.is_string()) throw Error(kCfg, "sweeps.profiles: expected strings");
    c.profiles.push_back(profile_from_string(v.get<std::string>()));
  }
  return c;
}

AssessmentConfig load_assessment_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = detail::read_text(path);
  } catch (const Error& e) {
    throw Error(kCfg, e.what());
  }
  return assessment_config_from_json(text, path.parent_path());
}

AssessmentTable run_assessment(const AssessmentConfig& config,
                               const std::optional<std::filesystem::path>& out_dir) {
  RobotModel model;
  try {
    model = load_robot(config.robot_file);
  } catch (const Error& e) {
    throw Error(kCfg, e.what());
  }
  for (const SweepConfiguration& s : config.configurations) {
    if (s.q_start.size() != model.dof() || s.q_end.size() != model.dof()) {
      throw Error(kCfg, "configuration '" + s.name + "' does not match the robot's joint count");
    }
  }

  AssessmentTable table;
  table.robot = model.name;
  table.seed = config.seed;
  for (std::size_t ci = 0; ci < config.configurations.size(); ++ci)
    for (double payload : config.payloads)
      for (CommandKind command : config.commands)
        for (const LimitSetting& v : config.v_limits)
          for (const LimitSetting& a : config.a_limits)
            for (Profile profile : config.profiles) {
              AssessmentRow row;
              row.index = table.rows.size();
              row.configuration = config.configurations[ci].name;
              row.payload = payload;
              row.command = command;
              row.v_limit = v;
              row.a_limit = a;
              row.profile = profile;
              table.rows.push_back(std::move(row));
            }

  if (out_dir) std::filesystem::create_directories(*out_dir / "traces");

  const std::size_t per_config = table.rows.size() / config.configurations.size();
  kernels::omp::for_each_index(table.rows.size(), [&](std::size_t i) {
    AssessmentRow& row = table.rows[i];
    const SweepConfiguration& sc = config.configurations[i / per_config];
    const Payload payload{row.payload, kPayloadCom};
    try {
      Trajectory traj =
          row.command == CommandKind::kMoveJoint
              ? plan_movej(model, sc.q_start, sc.q_end, row.v_limit.joint, row.a_limit.joint)
              : plan_movel(model, sc.q_start, forward_kinematics(model, sc.q_end),
                           row.v_limit.linear, row.a_limit.linear);
      if (row.profile == Profile::kEnergyOptimal && traj.size() > 2) {
        MotionTimeOptions opts;
        opts.coarse_points = 17;
        opts.k_tolerance = 1e-3;
        row.k = optimal_motion_time(model, traj, payload, 1.0, config.k_max, opts).k_star;
        traj = time_scale(model, traj, row.k);
      }
      const PowerTrace trace = compute_power_trace(model, traj, payload);
      row.energy = integrate_energy(trace);
      for (const PowerSample& s : trace.samples) {
        row.temp_peak = std::max(row.temp_peak, s.temp.maxCoeff());
      }
      row.feasible = true;
      if (out_dir) {
        char name[32];
        std::snprintf(name, sizeof(name), "traces/run_%04zu.csv", row.index);
        row.trace_file = name;
        write_power_trace_csv(traj, trace, *out_dir / row.trace_file);
      }
    } catch (const Error& e) {
      row.feasible = false;
      row.reason = e.what();
    }
  });

  if (out_dir) detail::write_text(*out_dir / "assessment.csv", assessment_csv(table));
  return table;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string assessment_csv(const AssessmentTable& table) {
  std::ostringstream out;
  out << "index,configuration,payload,command,v_joint,v_linear,a_joint,a_linear,profile,"
         "status,k,duration,e_grid,e_mech,e_copper,e_baseline,e_dissipated,p_peak,"
         "temp_peak,trace_file,reason\n";
  for (const AssessmentRow& r : table.rows) {
    out << r.index << ',' << csv_quote(r.configuration) << ',' << format_double(r.payload)
        << ',' << to_string(r.command) << ',' << format_double(r.v_limit.joint) << ','
        << format_double(r.v_limit.linear) << ',' << format_double(r.a_limit.joint) << ','
        << format_double(r.a_limit.linear) << ',' << to_string(r.profile) << ','
        << (r.feasible ? "ok" : "infeasible") << ',';
    if (r.feasible) {
      const EnergyReport& e = r.energy;
      out << format_double(r.k) << ',' << format_double(e.duration) << ','
          << format_double(e.e_grid) << ',' << format_double(e.e_mech) << ','
          << format_double(e.e_copper) << ',' << format_double(e.e_baseline) << ','
          << format_double(e.e_dissipated) << ',' << format_double(e.p_peak) << ','
          << format_double(r.temp_peak) << ',' << r.trace_file << ",\n";
    } else {
      out << ",,,,,,,,,," << csv_quote(r.reason) << '\n';
    }
  }
  return out.str();
}

}  // namespace roboenergy
