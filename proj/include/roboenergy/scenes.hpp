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
#include <string>
#include <vector>

#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"
#include "roboenergy/power.hpp"

namespace roboenergy {

enum class Technique { kStandby, kCommandChoice, kMotionTime, kSaturation };
std::string_view to_string(Technique technique);
Technique technique_from_string(std::string_view name);

inline constexpr int kSceneCount = 10;
// Minimum relative gap (second_best - best) / second_best between options.
inline constexpr double kMinEnergyGap = 0.05;
inline constexpr int kMaxSceneAttempts = 100;
// Longest playback sequence stored per option.
inline constexpr std::size_t kMaxPlaybackFrames = 200;

// How an option's trajectory is rebuilt from the robot model.
struct OptionRecipe {
  enum class Kind { kHold, kMoveJoint, kMoveLinear, kScaled, kSaturated };
  Kind kind = Kind::kHold;
  JointVector q_start;  // hold pose for kHold
  JointVector q_end;
  double v_limit = 0.0;
  double a_limit = 0.0;
  double duration = 0.0;  // kHold only
  double k = 1.0;         // kScaled only
};

struct ProgramOption {
  std::string label;
  std::string description;
  OptionRecipe recipe;
  std::vector<MotionCommand> commands;
  Trajectory trajectory;
  PowerTrace trace;
  double e_grid = 0.0;
};

struct QuizScene {
  std::string id;
  Technique technique = Technique::kStandby;
  std::string robot_variant;  // model name
  std::string title;
  std::string prompt;
  std::string theory_text;
  Payload payload;
  std::vector<ProgramOption> options;
  int correct_index = 0;
};

// Rebuilds an option trajectory from its recipe (kSaturated reruns the
// saturator on the joint move).
Trajectory build_option_trajectory(const RobotModel& model, const OptionRecipe& recipe,
                                   const Payload& payload);

// Ten scenes covering the four techniques (3 standby, 3 command choice,
// 2 motion time, 2 saturation). robots[0] drives most scenes, robots[1]
// (when given) alternates in the standby and command scenes. Throws
// kGenerationFailed when a scene cannot reach the energy gap.
std::vector<QuizScene> generate_scenes(const std::vector<RobotModel>& robots,
                                       std::uint64_t seed);

// Scenes file (scenes-v1). Byte-identical for identical input. `robots`
// supplies the geometry for the stick-figure frames and path polylines.
std::string scenes_to_json(const std::vector<QuizScene>& scenes,
                           const std::vector<RobotModel>& robots, std::uint64_t seed);
void write_scenes(const std::vector<QuizScene>& scenes, const std::vector<RobotModel>& robots,
                  std::uint64_t seed, const std::filesystem::path& path);

}  // namespace roboenergy
