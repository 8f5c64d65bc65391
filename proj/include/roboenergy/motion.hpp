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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roboenergy/model.hpp"

namespace roboenergy {

// Controller sample period (500 Hz). Planners keep dt fixed and slow the
// profile by the factor needed to end on a whole number of intervals.
inline constexpr double kDefaultDt = 0.002;

// Minimum smallest-singular-value of the Jacobian tolerated along a
// Cartesian path.
inline constexpr double kSingularityClearance = 1e-3;

struct TrajectorySample {
  double t = 0.0;
  JointVector q, qd, qdd;
};

// Uniformly sampled joint-space motion.
struct Trajectory {
  double dt = kDefaultDt;
  std::vector<TrajectorySample> samples;

  std::size_t size() const { return samples.size(); }
  int dof() const { return samples.empty() ? 0 : static_cast<int>(samples.front().q.size()); }
  double duration() const {
    return samples.size() < 2 ? 0.0 : samples.back().t - samples.front().t;
  }
  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

// Rest-to-rest trapezoidal velocity profile over a scalar distance; becomes
// triangular when the cruise phase would be negative.
struct TrapezoidProfile {
  double distance = 0.0;
  double v_peak = 0.0;
  double accel = 0.0;
  double t_accel = 0.0;
  double t_cruise = 0.0;
  double duration = 0.0;

  static TrapezoidProfile plan(double distance, double v_max, double a_max);

  bool triangular() const { return t_cruise == 0.0; }
  double position(double t) const;
  double velocity(double t) const;
  double acceleration(double t) const;
};

enum class CommandKind { kMoveJoint, kMoveLinear };

std::string_view to_string(CommandKind kind);
CommandKind command_kind_from_string(std::string_view name);

// MoveJoint: joint_target, limits in rad/s and rad/s^2.
// MoveLinear: pose_target, limits in m/s and m/s^2.
struct MotionCommand {
  CommandKind kind = CommandKind::kMoveJoint;
  JointVector joint_target;
  Pose pose_target;
  double v_limit = 1.0;
  double a_limit = 1.0;
};

// Stationary trajectory at q lasting `duration` (at least one interval).
Trajectory hold(const JointVector& q, double duration, double dt = kDefaultDt);

// Synchronized joint-space trapezoid: all joints follow one normalized
// profile whose limits are set by the most constrained joint. Per-joint
// limits are min(v_limit, v_max) and min(a_limit, a_max).
Trajectory plan_movej(const RobotModel& model, const JointVector& q_start,
                      const JointVector& q_end, double v_limit, double a_limit,
                      double dt = kDefaultDt);

// Straight tool line with slerped orientation on a trapezoid over path
// length (rotation angle when the position does not change); joints by IK
// continuation, qd/qdd by central differences.
Trajectory plan_movel(const RobotModel& model, const JointVector& q_start,
                      const Pose& target, double v_limit, double a_limit,
                      double dt = kDefaultDt);

// Executes the commands back to back, each rest-to-rest, starting at q_start.
Trajectory plan_program(const RobotModel& model, const JointVector& q_start,
                        std::span<const MotionCommand> program,
                        double dt = kDefaultDt);

// Uniform time dilation by k > 0: t' = k t, qd' = qd / k, qdd' = qdd / k^2.
Trajectory time_scale(const Trajectory& traj, double k);
// As above; throws kLimitViolation when k < 1 drives qd or qdd past limits.
Trajectory time_scale(const RobotModel& model, const Trajectory& traj, double k);

enum class LimitQuantity { kPosition, kVelocity, kAcceleration };
std::string_view to_string(LimitQuantity quantity);

struct LimitViolation {
  int joint = 0;             // zero-based
  std::size_t sample = 0;
  LimitQuantity quantity = LimitQuantity::kPosition;
  double value = 0.0;
  double margin = 0.0;       // amount by which the limit is exceeded
};

std::vector<LimitViolation> validate_limits(const RobotModel& model,
                                            const Trajectory& traj);

// Throws kInvalidTrajectory unless the trajectory is uniformly sampled,
// finite, rest-to-rest, within position and velocity limits and its qd
// agrees with central differences of q within 1e-3 v_max + a_max dt.
void check_trajectory(const RobotModel& model, const Trajectory& traj);

}  // namespace roboenergy
