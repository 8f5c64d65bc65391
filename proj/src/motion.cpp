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

#include "roboenergy/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "roboenergy/error.hpp"
#include "roboenergy/kinematics.hpp"

namespace roboenergy {

namespace {

// Number of dt intervals covering `duration`, at least one.
std::size_t interval_count(double duration, double dt) {
  const double n = std::ceil(duration / dt - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, n));
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be finite and > 0");
  }
}

// Samples a profile whose duration has been stretched to a whole number of
// dt intervals. Calls emit(k, t, s, sd, sdd) with s normalized to [0, 1].
template <typename Emit>
void sample_profile(const TrapezoidProfile& profile, double dt, Emit&& emit) {
  const std::size_t n = interval_count(profile.duration, dt);
  const double total = static_cast<double>(n) * dt;
  const double k = total / profile.duration;  // >= 1: only ever slows down
  const double inv_d = 1.0 / profile.distance;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (i == 0) {
      emit(i, 0.0, 0.0, 0.0, 0.0);
    } else if (i == n) {
      emit(i, t, 1.0, 0.0, 0.0);
    } else {
      const double tau = t / k;
      emit(i, t, profile.position(tau) * inv_d, profile.velocity(tau) * inv_d / k,
           profile.acceleration(tau) * inv_d / (k * k));
    }
  }
}

}  // namespace

TrapezoidProfile TrapezoidProfile::plan(double distance, double v_max, double a_max) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw Error(ErrorCode::kInvalidArgument, "profile distance must be finite and >= 0");
  }
  require_positive(v_max, "profile velocity limit");
  require_positive(a_max, "profile acceleration limit");
  TrapezoidProfile p;
  p.distance = distance;
  p.accel = a_max;
  if (distance == 0.0) return p;
  if (distance >= v_max * v_max / a_max) {
    p.v_peak = v_max;
    p.t_accel = v_max / a_max;
    p.t_cruise = distance / v_max - v_max / a_max;
    if (p.t_cruise < 0.0) p.t_cruise = 0.0;
  } else {
    p.t_accel = std::sqrt(distance / a_max);
    p.v_peak = a_max * p.t_accel;
    p.t_cruise = 0.0;
  }
  p.duration = 2.0 * p.t_accel + p.t_cruise;
  return p;
}

double TrapezoidProfile::position(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= duration) return distance;
  if (t < t_accel) return 0.5 * accel * t * t;
  if (t < t_accel + t_cruise) {
    return 0.5 * accel * t_accel * t_accel + v_peak * (t - t_accel);
  }
  const double remaining = duration - t;
  return distance - 0.5 * accel * remaining * remaining;
}

double TrapezoidProfile::velocity(double t) const {
  if (t <= 0.0 || t >= duration) return 0.0;
  if (t < t_accel) return accel * t;
  if (t < t_accel + t_cruise) return v_peak;
  return accel * (duration - t);
}

double TrapezoidProfile::acceleration(double t) const {
  if (t <= 0.0 || t >= duration) return 0.0;
  if (t < t_accel) return accel;
  if (t < t_accel + t_cruise) return 0.0;
  return -accel;
}

std::string_view to_string(CommandKind kind) {
  return kind == CommandKind::kMoveJoint ? "MoveJoint" : "MoveLinear";
}

CommandKind command_kind_from_string(std::string_view name) {
  if (name == "MoveJoint") return CommandKind::kMoveJoint;
  if (name == "MoveLinear") return CommandKind::kMoveLinear;
  throw Error(ErrorCode::kParse, "unknown command kind '" + std::string(name) + "'");
}

std::string_view to_string(LimitQuantity quantity) {
  switch (quantity) {
    case LimitQuantity::kPosition: return "position";
    case LimitQuantity::kVelocity: return "velocity";
    case LimitQuantity::kAcceleration: return "acceleration";
  }
  return "unknown";
}

Trajectory hold(const JointVector& q, double duration, double dt) {
  require_positive(dt, "dt");
  if (!(duration >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "hold duration must be >= 0");
  }
  const std::size_t n = interval_count(duration, dt);
  Trajectory traj;
  traj.dt = dt;
  traj.samples.reserve(n + 1);
  const JointVector zero = JointVector::Zero(q.size());
  for (std::size_t i = 0; i <= n; ++i) {
    traj.samples.push_back({static_cast<double>(i) * dt, q, zero, zero});
  }
  return traj;
}

Trajectory plan_movej(const RobotModel& model, const JointVector& q_start,
                      const JointVector& q_end, double v_limit, double a_limit,
                      double dt) {
  require_within_limits(model, q_start, "plan_movej start");
  require_within_limits(model, q_end, "plan_movej end");
  require_positive(v_limit, "plan_movej v_limit");
  require_positive(a_limit, "plan_movej a_limit");
  require_positive(dt, "dt");

  const JointVector delta = q_end - q_start;
  if (delta.cwiseAbs().maxCoeff() == 0.0) return hold(q_start, dt, dt);

  double v_norm = std::numeric_limits<double>::infinity();
  double a_norm = std::numeric_limits<double>::infinity();
  for (int j = 0; j < model.dof(); ++j) {
    const double d = std::abs(delta[j]);
    if (d == 0.0) continue;
    v_norm = std::min(v_norm, std::min(v_limit, model.limits[j].v_max) / d);
    a_norm = std::min(a_norm, std::min(a_limit, model.limits[j].a_max) / d);
  }
  const TrapezoidProfile profile = TrapezoidProfile::plan(1.0, v_norm, a_norm);

  Trajectory traj;
  traj.dt = dt;
  sample_profile(profile, dt, [&](std::size_t, double t, double s, double sd, double sdd) {
    const JointVector q = s == 1.0 ? q_end : JointVector(q_start + s * delta);
    traj.samples.push_back({t, q, sd * delta, sdd * delta});
  });
  return traj;
}

Trajectory plan_movel(const RobotModel& model, const JointVector& q_start,
                      const Pose& target, double v_limit, double a_limit,
                      double dt) {
  require_within_limits(model, q_start, "plan_movel start");
  require_positive(v_limit, "plan_movel v_limit");
  require_positive(a_limit, "plan_movel a_limit");
  require_positive(dt, "dt");

  const Pose start = forward_kinematics(model, q_start);
  const Eigen::Quaterniond q0 = start.orientation;
  Eigen::Quaterniond q1 = target.orientation.normalized();
  if (q0.dot(q1) < 0.0) q1.coeffs() *= -1.0;

  const Eigen::Vector3d dp = target.position - start.position;
  const double length = dp.norm();
  const double angle = orientation_error(q1, q0).norm();
  if (length < 1e-12 && angle < 1e-12) return hold(q_start, dt, dt);

  // Rotation-only moves reuse the limits as rad/s and rad/s^2.
  const double distance = length >= 1e-9 ? length : angle;
  const TrapezoidProfile profile = TrapezoidProfile::plan(distance, v_limit, a_limit);

  Trajectory traj;
  traj.dt = dt;
  JointVector seed = q_start;
  sample_profile(profile, dt, [&](std::size_t i, double t, double s, double, double) {
    JointVector q;
    if (i == 0) {
      q = q_start;
    } else {
      Pose p;
      p.position = s == 1.0 ? target.position : Eigen::Vector3d(start.position + s * dp);
      p.orientation = s == 1.0 ? q1 : q0.slerp(s, q1);
      try {
        q = inverse_kinematics(model, p, seed);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kLimitViolation) {
          std::ostringstream msg;
          msg << "plan_movel: sample " << i << " leaves the joint limits";
          throw Error(ErrorCode::kJointLimitOnPath, msg.str());
        }
        throw;
      }
    }
    if (smallest_singular_value(jacobian(model, q)) < kSingularityClearance) {
      std::ostringstream msg;
      msg << "plan_movel: path passes near a singular configuration at t = " << t;
      throw Error(ErrorCode::kNearSingularity, msg.str());
    }
    seed = q;
    const JointVector zero = JointVector::Zero(model.dof());
    traj.samples.push_back({t, q, zero, zero});
  });

  const std::size_t n = traj.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const JointVector& prev = traj.samples[i - 1].q;
    const JointVector& next = traj.samples[i + 1].q;
    traj.samples[i].qd = (next - prev) / (2.0 * dt);
    traj.samples[i].qdd = (next - 2.0 * traj.samples[i].q + prev) / (dt * dt);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < model.dof(); ++j) {
      const double v = std::abs(traj.samples[i].qd[j]);
      if (v > model.limits[j].v_max * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "plan_movel: joint " << (j + 1) << " needs " << v
            << " rad/s at t = " << traj.samples[i].t << " (limit "
            << model.limits[j].v_max << ")";
        throw Error(ErrorCode::kJointVelocityExceeded, msg.str());
      }
    }
  }
  return traj;
}

Trajectory plan_program(const RobotModel& model, const JointVector& q_start,
                        std::span<const MotionCommand> program, double dt) {
  if (program.empty()) return hold(q_start, dt, dt);
  Trajectory out;
  out.dt = dt;
  JointVector q = q_start;
  for (const MotionCommand& cmd : program) {
    const Trajectory seg =
        cmd.kind == CommandKind::kMoveJoint
            ? plan_movej(model, q, cmd.joint_target, cmd.v_limit, cmd.a_limit, dt)
            : plan_movel(model, q, cmd.pose_target, cmd.v_limit, cmd.a_limit, dt);
    const std::size_t offset = out.samples.empty() ? 0 : out.samples.size() - 1;
    const std::size_t first = out.samples.empty() ? 0 : 1;
    for (std::size_t i = first; i < seg.size(); ++i) {
      TrajectorySample s = seg.samples[i];
      s.t = static_cast<double>(offset + i) * dt;
      out.samples.push_back(std::move(s));
    }
    q = seg.back().q;
  }
  return out;
}

Trajectory time_scale(const Trajectory& traj, double k) {
  require_positive(k, "time scale factor");
  Trajectory out;
  out.dt = traj.dt * k;
  out.samples.reserve(traj.size());
  const double inv_k = 1.0 / k;
  const double inv_k2 = inv_k * inv_k;
  for (const TrajectorySample& s : traj.samples) {
    out.samples.push_back({s.t * k, s.q, s.qd * inv_k, s.qdd * inv_k2});
  }
  return out;
}

Trajectory time_scale(const RobotModel& model, const Trajectory& traj, double k) {
  Trajectory out = time_scale(traj, k);
  if (k < 1.0) {
    for (const LimitViolation& v : validate_limits(model, out)) {
      if (v.quantity == LimitQuantity::kPosition) continue;
      std::ostringstream msg;
      msg << "time_scale(k = " << k << "): joint " << (v.joint + 1) << " "
          << to_string(v.quantity) << " exceeds its limit by " << v.margin
          << " at sample " << v.sample;
      throw Error(ErrorCode::kLimitViolation, msg.str());
    }
  }
  return out;
}

std::vector<LimitViolation> validate_limits(const RobotModel& model,
                                            const Trajectory& traj) {
  std::vector<LimitViolation> out;
  const int n = std::min(model.dof(), traj.dof());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const TrajectorySample& s = traj.samples[i];
    for (int j = 0; j < n; ++j) {
      const JointLimits& lim = model.limits[j];
      if (s.q[j] < lim.q_min - 1e-12) {
        out.push_back({j, i, LimitQuantity::kPosition, s.q[j], lim.q_min - s.q[j]});
      } else if (s.q[j] > lim.q_max + 1e-12) {
        out.push_back({j, i, LimitQuantity::kPosition, s.q[j], s.q[j] - lim.q_max});
      }
      const double v = std::abs(s.qd[j]);
      if (v > lim.v_max * (1.0 + 1e-9)) {
        out.push_back({j, i, LimitQuantity::kVelocity, s.qd[j], v - lim.v_max});
      }
      const double a = std::abs(s.qdd[j]);
      if (a > lim.a_max * (1.0 + 1e-9)) {
        out.push_back({j, i, LimitQuantity::kAcceleration, s.qdd[j], a - lim.a_max});
      }
    }
  }
  return out;
}

void check_trajectory(const RobotModel& model, const Trajectory& traj) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidTrajectory, msg);
  };
  if (traj.samples.empty()) fail("trajectory has no samples");
  if (!(traj.dt > 0.0) || !std::isfinite(traj.dt)) fail("dt must be > 0");
  const int n = model.dof();
  const double t0 = traj.front().t;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const TrajectorySample& s = traj.samples[i];
    if (s.q.size() != n || s.qd.size() != n || s.qdd.size() != n) {
      fail("sample " + std::to_string(i) + " has the wrong joint count");
    }
    if (!std::isfinite(s.t) || !s.q.allFinite() || !s.qd.allFinite() ||
        !s.qdd.allFinite()) {
      fail("sample " + std::to_string(i) + " is not finite");
    }
    const double expected = t0 + static_cast<double>(i) * traj.dt;
    if (std::abs(s.t - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      fail("sample " + std::to_string(i) + " breaks uniform spacing");
    }
  }
  if (traj.front().qd.cwiseAbs().maxCoeff() > 1e-9 ||
      traj.back().qd.cwiseAbs().maxCoeff() > 1e-9) {
    fail("trajectory is not rest-to-rest");
  }
  for (const LimitViolation& v : validate_limits(model, traj)) {
    if (v.quantity == LimitQuantity::kAcceleration) continue;
    std::ostringstream msg;
    msg << "joint " << (v.joint + 1) << " " << to_string(v.quantity)
        << " limit exceeded by " << v.margin << " at sample " << v.sample;
    fail(msg.str());
  }
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const JointVector fd =
        (traj.samples[i + 1].q - traj.samples[i - 1].q) / (2.0 * traj.dt);
    for (int j = 0; j < n; ++j) {
      const JointLimits& lim = model.limits[j];
      if (std::abs(fd[j] - traj.samples[i].qd[j]) > 1e-3 * lim.v_max + lim.a_max * traj.dt) {
        std::ostringstream msg;
        msg << "joint " << (j + 1) << " velocity disagrees with differenced "
            << "position at sample " << i;
        fail(msg.str());
      }
    }
  }
}

}  // namespace roboenergy
