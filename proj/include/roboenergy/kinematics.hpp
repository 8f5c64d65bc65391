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

#include <vector>

#include <Eigen/Geometry>

#include "roboenergy/model.hpp"

namespace roboenergy {

// RotX(alpha) TransX(a) RotZ(theta) TransZ(d).
Eigen::Isometry3d modified_dh(double a, double alpha, double d, double theta);

// World poses of joint frames 1..n followed by the flange frame (n + 1
// entries). Frame i's z axis is joint i's rotation axis.
std::vector<Eigen::Isometry3d> joint_frames(const RobotModel& model,
                                            const JointVector& q);

Pose forward_kinematics(const RobotModel& model, const JointVector& q);

// Geometric Jacobian of the flange origin, expressed in the base frame.
JacobianMatrix jacobian(const RobotModel& model, const JointVector& q);

// sqrt(det(J J^T)); zero for models with fewer than 6 joints.
double manipulability(const JacobianMatrix& j);
double smallest_singular_value(const JacobianMatrix& j);

// Rotation vector taking `from` onto `to`, expressed in the base frame.
Eigen::Vector3d orientation_error(const Eigen::Quaterniond& to,
                                  const Eigen::Quaterniond& from);

struct IkOptions {
  double damping = 1e-3;
  int max_iterations = 200;
  double manipulability_threshold = 1e-6;
  double position_tolerance = 1e-10;     // m
  double orientation_tolerance = 1e-10;  // rad
  double max_step = 0.5;                 // rad, per iteration
};

// Damped least-squares continuation from `seed`. Throws kNoConvergence,
// kNearSingularity (solution manipulability below threshold) or
// kLimitViolation (seed or solution outside position limits).
JointVector inverse_kinematics(const RobotModel& model, const Pose& target,
                               const JointVector& seed,
                               const IkOptions& options = {});

}  // namespace roboenergy
