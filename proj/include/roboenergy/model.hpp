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

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace roboenergy {

inline constexpr int kMaxDof = 6;

// Joint-space vector sized to the model's DOF (at most 6, no heap allocation).
// The shipped arms are 6-DOF; 1- and 2-joint reduced models exist for
// analytic checks.
using JointVector =
    Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDof, 1>;

// Rows 0-2 linear velocity, rows 3-5 angular velocity, one column per joint.
using JacobianMatrix =
    Eigen::Matrix<double, 6, Eigen::Dynamic, Eigen::ColMajor, 6, kMaxDof>;

using JointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::ColMajor, kMaxDof, kMaxDof>;

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

// Modified (Craig) DH: link i is reached from frame i-1 by
// RotX(dh_alpha) TransX(dh_a) RotZ(q_i) TransZ(dh_d). Mass properties are
// expressed in link frame i, inertia about the COM.
struct LinkParams {
  double dh_a = 0.0;
  double dh_d = 0.0;
  double dh_alpha = 0.0;
  double mass = 0.0;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();
};

struct MotorParams {
  double kt_eff = 1.0;        // joint-referred torque constant, N m / A
  double r_winding = 1.0;     // ohm
  double visc_friction = 0.0; // N m s / rad
  double coul_friction = 0.0; // N m
  double thermal_res = 1.0;   // K / W
  double thermal_tau = 1.0;   // s
};

struct JointLimits {
  double q_min = -1.0;
  double q_max = 1.0;
  double v_max = 1.0;
  double a_max = 1.0;
};

// Fixed transform from the last joint frame to the tool flange, same
// convention as a link with q = 0.
struct FlangeOffset {
  double a = 0.0;
  double d = 0.0;
  double alpha = 0.0;
};

struct RobotModel {
  std::string name;
  std::string description;
  std::vector<LinkParams> links;
  std::vector<MotorParams> motors;
  std::vector<JointLimits> limits;
  FlangeOffset flange;
  double p_baseline = 0.0;  // controller idle power, W
  Eigen::Vector3d gravity{0.0, 0.0, -9.81};

  int dof() const { return static_cast<int>(links.size()); }

  // Throws Error(kInvalidArgument) describing the first broken invariant.
  void validate() const;
};

// Point mass rigidly attached to the flange.
struct Payload {
  double mass = 0.0;
  Eigen::Vector3d com_offset = Eigen::Vector3d::Zero();
};

bool within_position_limits(const RobotModel& model, const JointVector& q,
                            double tol = 1e-12);

// Throws Error(kLimitViolation) if q is outside the position limits.
void require_within_limits(const RobotModel& model, const JointVector& q,
                           const char* what);

// Throws Error(kInvalidArgument) on size mismatch or non-finite entries.
void require_joint_vector(const RobotModel& model, const JointVector& q,
                          const char* what);

}  // namespace roboenergy
