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
#include <span>
#include <string>
#include <vector>

#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"

namespace roboenergy {

inline constexpr double kDefaultAmbient = 25.0;  // degC

struct JointPower {
  double power = 0.0;    // electrical, W (negative when regenerating)
  double current = 0.0;  // A
  double mech = 0.0;     // shaft power incl. friction torque, W
  double copper = 0.0;   // i^2 R, W
};

// tau_total = tau + visc * omega + coul * sign(omega), sign(0) = 0;
// i = tau_total / kt; P = tau_total * omega + i^2 R.
JointPower joint_electrical_power(const MotorParams& motor, double tau, double omega);

// p_grid - p_dissipated - p_reused = p_bus. p_reused is regenerated power
// absorbed on the bus (only nonzero under ReuseUpTo).
struct PowerSample {
  double t = 0.0;
  JointVector p_joint;
  JointVector i_joint;
  JointVector temp;
  double p_mech = 0.0;
  double p_copper = 0.0;
  double p_bus = 0.0;
  double p_grid = 0.0;
  double p_dissipated = 0.0;
  double p_reused = 0.0;
};

struct PowerTrace {
  double dt = kDefaultDt;
  double p_baseline = 0.0;
  std::vector<PowerSample> samples;

  std::size_t size() const { return samples.size(); }
};

struct RegenPolicy {
  enum class Mode { kDissipateAll, kReuseUpTo };
  Mode mode = Mode::kDissipateAll;
  double p_floor = 0.0;  // W, <= 0; regenerated power above it is reused

  static RegenPolicy dissipate_all() { return {}; }
  static RegenPolicy reuse_up_to(double p_floor);
};

struct EnergyReport {
  double e_grid = 0.0;
  double e_mech = 0.0;
  double e_copper = 0.0;
  double e_baseline = 0.0;
  double e_dissipated = 0.0;
  double p_peak = 0.0;
  double duration = 0.0;
};

// Splits p_bus into grid / dissipated / reused shares.
void apply_regen_policy(const RegenPolicy& policy, PowerSample& sample);

// Per-sample electrical power along a validated trajectory (throws
// kInvalidTrajectory), with winding temperatures from the copper losses.
PowerTrace compute_power_trace(const RobotModel& model, const Trajectory& traj,
                               const Payload& payload = {},
                               const RegenPolicy& policy = {},
                               double ambient = kDefaultAmbient);

// Trapezoidal integration of every power channel. Throws kTooFewSamples.
EnergyReport integrate_energy(const PowerTrace& trace);

// Grid energy of a trajectory: integrate_energy(compute_power_trace(...)).
EnergyReport simulate_energy(const RobotModel& model, const Trajectory& traj,
                             const Payload& payload = {},
                             const RegenPolicy& policy = {});

// Holding power at rest: sum_j (g_j / kt_j)^2 R_j + p_baseline. Throws
// kLimitViolation for q outside the position limits.
double standby_power(const RobotModel& model, const JointVector& q,
                     const Payload& payload = {});

// First-order lumped winding model, explicit Euler at dt from T(0) = ambient:
// T' = (ambient + R_th p_loss - T) / tau_th.
std::vector<double> motor_temperature(std::span<const double> loss_power,
                                      const MotorParams& motor, double ambient,
                                      double dt);

// Dataset export: t,q1..,qd1..,i1..,temp1..,p_bus,p_grid,p_diss,e_cum.
std::string power_trace_to_csv(const Trajectory& traj, const PowerTrace& trace);
void write_power_trace_csv(const Trajectory& traj, const PowerTrace& trace,
                           const std::filesystem::path& path);

}  // namespace roboenergy
