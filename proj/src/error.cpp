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

#include "roboenergy/error.hpp"

namespace roboenergy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNearSingularity: return "NearSingularity";
    case ErrorCode::kLimitViolation: return "LimitViolation";
    case ErrorCode::kJointLimitOnPath: return "JointLimitOnPath";
    case ErrorCode::kJointVelocityExceeded: return "JointVelocityExceeded";
    case ErrorCode::kInvalidTrajectory: return "InvalidTrajectory";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kNoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorCode::kNoFeasiblePlan: return "NoFeasiblePlan";
    case ErrorCode::kEmptyCurve: return "EmptyCurve";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

}  // namespace roboenergy
