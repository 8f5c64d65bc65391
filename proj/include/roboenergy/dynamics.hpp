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

#include <Eigen/Core>

#include "roboenergy/model.hpp"

namespace roboenergy {

// Mass properties and DH geometry of a model with its payload folded into
// the last link. Building one is cheap; evaluating it is the hot path of
// every power trace.
class RigidBodyChain {
 public:
  RigidBodyChain(const RobotModel& model, const Payload& payload);

  int dof() const { return static_cast<int>(links_.size()); }
  const Eigen::Vector3d& gravity() const { return gravity_; }

  // Recursive Newton-Euler joint torques (no motor friction).
  JointVector inverse_dynamics(const JointVector& q, const JointVector& qd,
                               const JointVector& qdd) const;
  JointVector inverse_dynamics(const JointVector& q, const JointVector& qd,
                               const JointVector& qdd,
                               const Eigen::Vector3d& gravity) const;

 private:
  struct Link {
    double a, d, cos_alpha, sin_alpha;
    double mass;
    Eigen::Vector3d com;
    Eigen::Matrix3d inertia;
  };
  std::vector<Link> links_;
  Eigen::Vector3d gravity_;
};

JointVector inverse_dynamics(const RobotModel& model, const JointVector& q,
                             const JointVector& qd, const JointVector& qdd,
                             const Payload& payload = {});

// Torque the joints must supply to hold q still; equals dU/dq.
JointVector gravity_torque(const RobotModel& model, const JointVector& q,
                           const Payload& payload = {});

// Joint-space inertia assembled column by column from unit-acceleration
// probes with gravity switched off.
JointMatrix mass_matrix(const RobotModel& model, const JointVector& q,
                        const Payload& payload = {});

// Energies from link frames directly, independent of the RNEA recursion.
double potential_energy(const RobotModel& model, const JointVector& q,
                        const Payload& payload = {});
double kinetic_energy(const RobotModel& model, const JointVector& q,
                      const JointVector& qd, const Payload& payload = {});

}  // namespace roboenergy
