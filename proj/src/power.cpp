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

#include "roboenergy/power.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/error.hpp"
#include "roboenergy/kernels.hpp"
#include "roboenergy/trajectory_io.hpp"

namespace roboenergy {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

JointPower joint_electrical_power(const MotorParams& motor, double tau, double omega) {
  const double tau_total =
      tau + motor.visc_friction * omega + motor.coul_friction * sign(omega);
  JointPower out;
  out.current = tau_total / motor.kt_eff;
  out.mech = tau_total * omega;
  out.copper = out.current * out.current * motor.r_winding;
  out.power = out.mech + out.copper;
  return out;
}

RegenPolicy RegenPolicy::reuse_up_to(double p_floor) {
  if (!(p_floor <= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "regeneration floor must be <= 0");
  }
  return {Mode::kReuseUpTo, p_floor};
}

void apply_regen_policy(const RegenPolicy& policy, PowerSample& s) {
  const double p = s.p_bus;
  if (p >= 0.0) {
    s.p_grid = p;
    s.p_dissipated = 0.0;
    s.p_reused = 0.0;
    return;
  }
  s.p_grid = 0.0;
  if (policy.mode == RegenPolicy::Mode::kDissipateAll) {
    s.p_dissipated = -p;
    s.p_reused = 0.0;
  } else if (p >= policy.p_floor) {
    s.p_dissipated = 0.0;
    s.p_reused = -p;
  } else {
    s.p_dissipated = policy.p_floor - p;
    s.p_reused = -policy.p_floor;
  }
}

PowerTrace compute_power_trace(const RobotModel& model, const Trajectory& traj,
                               const Payload& payload, const RegenPolicy& policy,
                               double ambient) {
  check_trajectory(model, traj);
  const RigidBodyChain chain(model, payload);
  PowerTrace trace;
  trace.dt = traj.dt;
  trace.p_baseline = model.p_baseline;
  trace.samples.resize(traj.size());
  kernels::omp::evaluate_power(model, chain, traj, trace.samples);

  for (PowerSample& s : trace.samples) apply_regen_policy(policy, s);

  const int n = model.dof();
  std::vector<double> loss(traj.size());
  for (PowerSample& s : trace.samples) s.temp.resize(n);
  for (int j = 0; j < n; ++j) {
    const MotorParams& m = model.motors[j];
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double current = trace.samples[i].i_joint[j];
      loss[i] = current * current * m.r_winding;
    }
    const std::vector<double> temp = motor_temperature(loss, m, ambient, traj.dt);
    for (std::size_t i = 0; i < traj.size(); ++i) trace.samples[i].temp[j] = temp[i];
  }
  return trace;
}

EnergyReport integrate_energy(const PowerTrace& trace) {
  if (trace.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples, "energy integration needs >= 2 samples");
  }
  EnergyReport r;
  const double half = 0.5 * trace.dt;
  r.p_peak = trace.samples.front().p_grid;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const PowerSample& a = trace.samples[i];
    const PowerSample& b = trace.samples[i + 1];
    r.e_grid += half * (a.p_grid + b.p_grid);
    r.e_dissipated += half * (a.p_dissipated + b.p_dissipated);
    r.e_mech += half * (a.p_mech + b.p_mech);
    r.e_copper += half * (a.p_copper + b.p_copper);
    r.p_peak = std::max(r.p_peak, b.p_grid);
  }
  r.duration = trace.dt * static_cast<double>(trace.size() - 1);
  r.e_baseline = trace.p_baseline * r.duration;
  return r;
}

EnergyReport simulate_energy(const RobotModel& model, const Trajectory& traj,
                             const Payload& payload, const RegenPolicy& policy) {
  return integrate_energy(compute_power_trace(model, traj, payload, policy));
}

double standby_power(const RobotModel& model, const JointVector& q,
                     const Payload& payload) {
  require_within_limits(model, q, "standby_power");
  return kernels::standby_power_at(model, RigidBodyChain(model, payload), q);
}

std::vector<double> motor_temperature(std::span<const double> loss_power,
                                      const MotorParams& motor, double ambient,
                                      double dt) {
  std::vector<double> temp(loss_power.size());
  if (temp.empty()) return temp;
  double t = ambient;
  const double rate = dt / motor.thermal_tau;
  for (std::size_t i = 0; i < loss_power.size(); ++i) {
    temp[i] = t;
    t += rate * (ambient + motor.thermal_res * loss_power[i] - t);
  }
  return temp;
}

std::string power_trace_to_csv(const Trajectory& traj, const PowerTrace& trace) {
  if (traj.size() != trace.size()) {
    throw Error(ErrorCode::kInvalidArgument, "trajectory and trace lengths differ");
  }
  const int n = traj.dof();
  std::ostringstream out;
  out << "t";
  for (const char* prefix : {"q", "qd", "i", "temp"}) {
    for (int j = 1; j <= n; ++j) out << ',' << prefix << j;
  }
  out << ",p_bus,p_grid,p_diss,e_cum\n";
  double e_cum = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const PowerSample& s = trace.samples[i];
    if (i > 0) e_cum += 0.5 * trace.dt * (trace.samples[i - 1].p_grid + s.p_grid);
    out << format_double(s.t);
    for (const JointVector* v : {&traj.samples[i].q, &traj.samples[i].qd, &s.i_joint, &s.temp}) {
      for (int j = 0; j < n; ++j) out << ',' << format_double((*v)[j]);
    }
    out << ',' << format_double(s.p_bus) << ',' << format_double(s.p_grid) << ','
        << format_double(s.p_dissipated) << ',' << format_double(e_cum) << '\n';
  }
  return out.str();
}

void write_power_trace_csv(const Trajectory& traj, const PowerTrace& trace,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << power_trace_to_csv(traj, trace);
}

}  // namespace roboenergy
