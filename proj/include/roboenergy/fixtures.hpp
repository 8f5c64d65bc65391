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

#include <filesystem>
#include <string>
#include <vector>

#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"
#include "roboenergy/strategies.hpp"

namespace roboenergy {

// Shipped per-robot experiment fixtures (fixtures-v1). All numbers are
// chosen for this toolkit; none are measurements.

struct NamedMove {
  std::string name;
  JointVector q_start;
  JointVector q_end;
};

// A joint-space move planned at explicit limits.
struct PlannedMove {
  JointVector q_start;
  JointVector q_end;
  double v_limit = 1.0;
  double a_limit = 1.0;
  Payload payload;
};

struct CommandPairFixture {
  JointVector q_start;
  JointVector q_end;
  CommandLimits limits;
  std::vector<double> payloads;
};

struct MotionTimeFixture {
  PlannedMove move;
  double k_min = 0.5;
  double k_max = 3.0;
};

struct VerticalDescentFixture {
  JointVector q_start;
  double drop = 0.5;  // m
  double v_limit = 1.0;
  double a_limit = 1.0;
  Payload payload;
};

struct Fixtures {
  std::string robot;  // robot name the fixtures are written for
  JointVector reference_standby;
  std::vector<NamedMove> moves;
  CommandPairFixture command_pair;
  PlannedMove descent;
  MotionTimeFixture motion_time;
  VerticalDescentFixture vertical_descent;
};

Fixtures fixtures_from_json(const std::string& text);
Fixtures load_fixtures(const std::filesystem::path& path);
// data_dir()/fixtures/<robot name with '-' replaced by '_'>.json
std::filesystem::path fixtures_path_for(const RobotModel& model);

Trajectory plan(const RobotModel& model, const PlannedMove& move);
// Straight downward MoveLinear of `drop` metres from q_start.
Trajectory plan(const RobotModel& model, const VerticalDescentFixture& fixture);

}  // namespace roboenergy
