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
#include <optional>
#include <string>
#include <vector>

#include "roboenergy/model.hpp"
#include "roboenergy/motion.hpp"
#include "roboenergy/optim.hpp"
#include "roboenergy/power.hpp"

namespace roboenergy {

// ---------------------------------------------------------------------------
// Optimal standby position
// ---------------------------------------------------------------------------

struct StandbyConstraint {
  enum class Kind { kFree, kFixedTcpPosition };
  Kind kind = Kind::kFree;
  double tolerance = 0.0;  // m, only for kFixedTcpPosition

  static StandbyConstraint free() { return {}; }
  static StandbyConstraint fixed_tcp_position(double tolerance_m) {
    return {Kind::kFixedTcpPosition, tolerance_m};
  }
};

struct StandbyOptions {
  int random_starts = 8;
  std::uint64_t seed = 42;
  NelderMeadOptions simplex;
};

struct StandbyResult {
  JointVector q_star;
  double power_star = 0.0;      // W
  double baseline_power = 0.0;  // W, standby power at the seed pose
  double saving_fraction = 0.0;
  int starts = 0;
  int evaluations = 0;
};

// Multi-start Nelder-Mead over the joint box minimizing standby_power.
// Candidates whose powers agree within 1e-9 relative are ranked by lower
// potential energy (a hanging pose beats an upright one). Throws
// kLimitViolation (seed) and kNoFeasibleCandidate.
StandbyResult optimal_standby(const RobotModel& model, const Payload& payload,
                              const JointVector& q_seed,
                              const StandbyConstraint& constraint = {},
                              const StandbyOptions& options = {});

// ---------------------------------------------------------------------------
// Command selection (MoveJoint vs MoveLinear)
// ---------------------------------------------------------------------------

struct CommandLimits {
  double joint_velocity = 1.0;       // rad/s
  double joint_acceleration = 1.4;   // rad/s^2
  double linear_velocity = 0.25;     // m/s
  double linear_acceleration = 1.2;  // m/s^2
};

struct CommandComparison {
  // NaN when the branch could not be planned; the reason is kept.
  double e_movej = 0.0;
  double e_movel = 0.0;
  CommandKind recommended = CommandKind::kMoveJoint;
  double saving_fraction = 0.0;
  std::optional<std::string> movej_error;
  std::optional<std::string> movel_error;
  EnergyReport movej_report;
  EnergyReport movel_report;
};

// Plans, simulates (DissipateAll) and integrates both commands from q_start
// to q_end (MoveLinear targets fk(q_end)). Ties go to MoveJoint. Throws
// kNoFeasiblePlan when neither command can be planned.
CommandComparison select_command(const RobotModel& model, const JointVector& q_start,
                                 const JointVector& q_end, const Payload& payload,
                                 const CommandLimits& limits);

// ---------------------------------------------------------------------------
// Optimal motion time
// ---------------------------------------------------------------------------

struct CurvePoint {
  double k = 0.0;
  double duration = 0.0;
  double e_grid = 0.0;
};

struct ExcludedPoint {
  double k = 0.0;
  std::string reason;
};

struct CharacteristicCurve {
  double base_duration = 0.0;
  std::vector<CurvePoint> points;      // feasible, k increasing
  std::vector<ExcludedPoint> excluded;
};

// Grid energy of traj slowed by k (checked time_scale).
double scaled_energy(const RobotModel& model, const Trajectory& traj,
                     const Payload& payload, double k,
                     const RegenPolicy& policy = {});

// Energy at n_points geometrically spaced scale factors in [k_min, k_max].
// Throws kEmptyCurve when no k is feasible.
CharacteristicCurve characteristic_curve(const RobotModel& model,
                                         const Trajectory& traj_base,
                                         const Payload& payload, double k_min,
                                         double k_max, int n_points,
                                         const RegenPolicy& policy = {});

struct MotionTimeOptions {
  int coarse_points = 33;
  // Width of the final golden-section bracket; tighter than the 1e-3 the
  // search is required to reach.
  double k_tolerance = 1e-4;
  RegenPolicy policy;
};

struct MotionTimeResult {
  double k_star = 1.0;
  double e_star = 0.0;
  double duration_star = 0.0;
  CharacteristicCurve curve;  // the coarse grid
};

// Coarse grid to bracket the minimum, then golden-section refinement.
MotionTimeResult optimal_motion_time(const RobotModel& model, const Trajectory& traj_base,
                                     const Payload& payload, double k_min, double k_max,
                                     const MotionTimeOptions& options = {});

// ---------------------------------------------------------------------------
// Dynamic power saturation
// ---------------------------------------------------------------------------

struct SaturationOptions {
  double p_floor = 0.0;        // W, <= 0
  double epsilon = 0.5;        // W, neighbours within floor + epsilon are stretched too
  double stretch = 1.05;       // per-iteration slow-down inside an interval
  int max_iterations = 200;
};

struct SaturationResult {
  Trajectory traj_out;
  double e_grid_before = 0.0;
  double e_grid_after = 0.0;
  double e_dissipated_before = 0.0;
  double e_dissipated_after = 0.0;
  int iterations = 0;
  bool converged = true;  // false: iteration cap hit, best iterate returned
};

// Re-times the motion along the same joint path so the bus power never drops
// below p_floor: regenerating intervals are slowed by a C1 monotone time warp
// until no sample remains below the floor. Energies are reported under
// DissipateAll accounting.
SaturationResult saturate_power(const RobotModel& model, const Trajectory& traj,
                                const Payload& payload,
                                const SaturationOptions& options = {});

// Resamples traj along its own path with the local slow-down factor sigma
// (one value per input sample, >= 1, piecewise linear in the original time).
// Exposed for tests.
Trajectory warp_trajectory(const Trajectory& traj, const std::vector<double>& sigma);

}  // namespace roboenergy
