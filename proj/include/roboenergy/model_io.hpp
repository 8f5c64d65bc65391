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

#include "roboenergy/model.hpp"

namespace roboenergy {

inline constexpr const char* kRobotSchema = "robot-v1";

// Strict robot-v1 parser: unknown or missing fields are errors
// (Error::kParse), then the model invariants are validated.
RobotModel robot_from_json(const std::string& text);
RobotModel load_robot(const std::filesystem::path& path);

// Canonical serialization; robot_from_json(robot_to_json(m)) == m and the
// text form is a fixed point of load/save.
std::string robot_to_json(const RobotModel& model);
void save_robot(const RobotModel& model, const std::filesystem::path& path);

bool operator==(const RobotModel& a, const RobotModel& b);

// Directory holding the shipped parameter files and fixtures.
std::filesystem::path data_dir();

}  // namespace roboenergy
