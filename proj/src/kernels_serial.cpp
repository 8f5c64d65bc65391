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

#include <cassert>

#include "roboenergy/kernels.hpp"

namespace roboenergy::kernels {

void evaluate_power_sample(const RobotModel& model, const RigidBodyChain& chain,
                           const TrajectorySample& in, PowerSample& out) {
  const int n = chain.dof();
  const JointVector tau = chain.inverse_dynamics(in.q, in.qd, in.qdd);
  out.t = in.t;
  out.p_joint.resize(n);
  out.i_joint.resize(n);
  double mech = 0.0, copper = 0.0, bus = 0.0;
  for (int j = 0; j < n; ++j) {
    const JointPower jp = joint_electrical_power(model.motors[j], tau[j], in.qd[j]);
    out.p_joint[j] = jp.power;
    out.i_joint[j] = jp.current;
    mech += jp.mech;
    copper += jp.copper;
    bus += jp.power;
  }
  out.p_mech = mech;
  out.p_copper = copper;
  out.p_bus = bus + model.p_baseline;
}

double standby_power_at(const RobotModel& model, const RigidBodyChain& chain,
                        const JointVector& q) {
  const JointVector zero = JointVector::Zero(chain.dof());
  const JointVector g = chain.inverse_dynamics(q, zero, zero);
  double p = 0.0;
  for (int j = 0; j < chain.dof(); ++j) {
    const double i = g[j] / model.motors[j].kt_eff;
    p += i * i * model.motors[j].r_winding;
  }
  return p + model.p_baseline;
}

namespace serial {

void evaluate_power(const RobotModel& model, const RigidBodyChain& chain,
                    const Trajectory& traj, std::span<PowerSample> out) {
  assert(out.size() == traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    evaluate_power_sample(model, chain, traj.samples[i], out[i]);
  }
}

std::vector<double> standby_power_batch(const RobotModel& model,
                                        const RigidBodyChain& chain,
                                        std::span<const JointVector> configs) {
  std::vector<double> out(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    out[i] = standby_power_at(model, chain, configs[i]);
  }
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace serial
}  // namespace roboenergy::kernels
