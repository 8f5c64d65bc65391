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

#include "roboenergy/motion.hpp"

namespace roboenergy {

// CSV with header t,q1..qn,qd1..qdn,qdd1..qddn; values printed with 17
// significant digits so a read-back is exact.
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// Program file: JSON array of commands, e.g.
//   [{"kind": "MoveJoint", "target": [q1..q6], "v_limit": 1.0, "a_limit": 1.4},
//    {"kind": "MoveLinear",
//     "target": {"position": [x, y, z], "orientation": [w, x, y, z]},
//     "v_limit": 0.25, "a_limit": 1.2}]
std::string program_to_json(const std::vector<MotionCommand>& program);
std::vector<MotionCommand> program_from_json(const std::string& text);
std::vector<MotionCommand> read_program(const std::filesystem::path& path);

// Shared with other emitters: shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace roboenergy
