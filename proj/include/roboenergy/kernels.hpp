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

// Data-parallel inner loops. Every kernel exists twice: `serial` is the
// plain reference kept for testing, `omp` is the OpenMP version used by the
// library. Both produce bit-identical results: work is split per element
// and any reduction happens afterwards in index order.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"
#include "roboenergy/power.hpp"

namespace roboenergy::kernels {

// Fills t, p_joint, i_joint, p_mech, p_copper and p_bus of out[i] from
// traj.samples[i]. out.size() must equal traj.size().
namespace serial {
void evaluate_power(const RobotModel& model, const RigidBodyChain& chain,
                    const Trajectory& traj, std::span<PowerSample> out);
std::vector<double> standby_power_batch(const RobotModel& model,
                                        const RigidBodyChain& chain,
                                        std::span<const JointVector> configs);
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);
}  // namespace serial

namespace omp {
void evaluate_power(const RobotModel& model, const RigidBodyChain& chain,
                    const Trajectory& traj, std::span<PowerSample> out);
std::vector<double> standby_power_batch(const RobotModel& model,
                                        const RigidBodyChain& chain,
                                        std::span<const JointVector> configs);
// Runs body(i) for i in [0, n) across threads; body must only write to
// per-index state.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);
int max_threads();
}  // namespace omp

// Per-sample body shared by both variants.
void evaluate_power_sample(const RobotModel& model, const RigidBodyChain& chain,
                           const TrajectorySample& in, PowerSample& out);
double standby_power_at(const RobotModel& model, const RigidBodyChain& chain,
                        const JointVector& q);

}  // namespace roboenergy::kernels
