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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"
#include "roboenergy/power.hpp"

namespace roboenergy {

struct SweepConfiguration {
  std::string name;
  JointVector q_start;
  JointVector q_end;
};

// A speed or acceleration setting: the joint value drives MoveJoint, the
// linear value drives MoveLinear.
struct LimitSetting {
  double joint = 1.0;
  double linear = 1.0;
};

enum class Profile { kNominal, kEnergyOptimal };
std::string_view to_string(Profile profile);
Profile profile_from_string(std::string_view name);

struct AssessmentConfig {
  std::filesystem::path robot_file;
  std::vector<SweepConfiguration> configurations;
  std::vector<double> payloads;  // kg
  std::vector<CommandKind> commands;
  std::vector<LimitSetting> v_limits;
  std::vector<LimitSetting> a_limits;
  std::vector<Profile> profiles;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  // Scale-factor range searched by the energy-optimal profile.
  double k_max = 3.0;

  std::size_t sweep_size() const;
};

// Relative paths inside the config resolve against `base_dir`. Throws kConfig.
AssessmentConfig assessment_config_from_json(const std::string& text,
                                             const std::filesystem::path& base_dir);
AssessmentConfig load_assessment_config(const std::filesystem::path& path);

struct AssessmentRow {
  std::size_t index = 0;  // sweep-point index, row order
  std::string configuration;
  double payload = 0.0;
  CommandKind command = CommandKind::kMoveJoint;
  LimitSetting v_limit;
  LimitSetting a_limit;
  Profile profile = Profile::kNominal;
  bool feasible = false;
  std::string reason;  // why the point is infeasible
  double k = 1.0;      // time scale applied to the nominal plan
  EnergyReport energy;
  double temp_peak = 0.0;  // deg C
  std::string trace_file;  // relative to the output directory
};

struct AssessmentTable {
  std::string robot;
  std::uint64_t seed = 0;
  std::vector<AssessmentRow> rows;  // one per sweep point, feasible or not

  std::size_t feasible_count() const;
};

// Plans, simulates and integrates every sweep point. When `out_dir` is set,
// writes traces/run_NNNN.csv for feasible points and assessment.csv.
AssessmentTable run_assessment(const AssessmentConfig& config,
                               const std::optional<std::filesystem::path>& out_dir);

std::string assessment_csv(const AssessmentTable& table);

}  // namespace roboenergy
