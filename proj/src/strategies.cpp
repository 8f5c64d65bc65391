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

#include "roboenergy/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/error.hpp"
#include "roboenergy/kernels.hpp"
#include "roboenergy/kinematics.hpp"

namespace roboenergy {

// ---------------------------------------------------------------------------
// Standby
// ---------------------------------------------------------------------------

namespace {

struct StandbyCandidate {
  JointVector q;
  double power = std::numeric_limits<double>::infinity();
  double potential = 0.0;
  bool feasible = false;
  int evaluations = 0;
};

bool powers_tie(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

StandbyResult optimal_standby(const RobotModel& model, const Payload& payload,
                              const JointVector& q_seed,
                              const StandbyConstraint& constraint,
                              const StandbyOptions& options) {
  require_within_limits(model, q_seed, "optimal_standby seed");
  if (constraint.kind == StandbyConstraint::Kind::kFixedTcpPosition &&
      !(constraint.tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "TCP position tolerance must be >= 0");
  }
  const int n = model.dof();
  const RigidBodyChain chain(model, payload);
  const Eigen::Vector3d tcp_seed = forward_kinematics(model, q_seed).position;

  Eigen::VectorXd lower(n), upper(n);
  for (int j = 0; j < n; ++j) {
    lower[j] = model.limits[j].q_min;
    upper[j] = model.limits[j].q_max;
  }

  auto tcp_ok = [&](const JointVector& q) {
    if (constraint.kind == StandbyConstraint::Kind::kFree) return true;
    return (forward_kinematics(model, q).position - tcp_seed).norm() <= constraint.tolerance;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    const JointVector q = x;
    const double p = kernels::standby_power_at(model, chain, q);
    if (constraint.kind == StandbyConstraint::Kind::kFree) return p;
    const double miss = (forward_kinematics(model, q).position - tcp_seed).norm() -
                        constraint.tolerance;
    return miss <= 0.0 ? p : 1e6 * (1.0 + miss) + p;
  };

  // Start 0 is the seed; the rest are drawn up front so the draw order does
  // not depend on scheduling.
  std::vector<Eigen::VectorXd> starts{Eigen::VectorXd(q_seed)};
  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.random_starts; ++s) {
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) {
      std::uniform_real_distribution<double> dist(lower[j], upper[j]);
      x[j] = dist(rng);
    }
    starts.push_back(x);
  }

  std::vector<StandbyCandidate> candidates(starts.size());
  kernels::omp::for_each_index(starts.size(), [&](std::size_t i) {
    const NelderMeadResult r = nelder_mead(objective, starts[i], lower, upper, options.simplex);
    StandbyCandidate& c = candidates[i];
    c.q = r.x;
    c.evaluations = r.evaluations;
    c.feasible = tcp_ok(c.q);
    if (c.feasible) {
      c.power = kernels::standby_power_at(model, chain, c.q);
      c.potential = potential_energy(model, c.q, payload);
    }
  });

  const StandbyCandidate* best = nullptr;
  int evaluations = 0;
  for (const StandbyCandidate& c : candidates) {
    evaluations += c.evaluations;
    if (!c.feasible) continue;
    if (best == nullptr || (c.power < best->power && !powers_tie(c.power, best->power)) ||
        (powers_tie(c.power, best->power) && c.potential < best->potential - 1e-12)) {
      best = &c;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorCode::kNoFeasibleCandidate,
                "optimal_standby: no candidate keeps the TCP within tolerance");
  }

  StandbyResult result;
  result.baseline_power = standby_power(model, q_seed, payload);
  result.q_star = best->q;
  result.power_star = standby_power(model, result.q_star, payload);
  if (result.power_star > result.baseline_power) {
    result.q_star = q_seed;
    result.power_star = result.baseline_power;
  }
  result.saving_fraction =
      result.baseline_power > 0.0 ? 1.0 - result.power_star / result.baseline_power : 0.0;
  result.starts = static_cast<int>(starts.size());
  result.evaluations = evaluations;
  return result;
}

// ---------------------------------------------------------------------------
// Command selection
// ---------------------------------------------------------------------------

CommandComparison select_command(const RobotModel& model, const JointVector& q_start,
                                 const JointVector& q_end, const Payload& payload,
                                 const CommandLimits& limits) {
  CommandComparison out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const Trajectory tj = plan_movej(model, q_start, q_end, limits.joint_velocity,
                                     limits.joint_acceleration);
    out.movej_report = simulate_energy(model, tj, payload);
    out.e_movej = out.movej_report.e_grid;
  } catch (const Error& e) {
    out.movej_error = e.what();
    out.e_movej = nan;
  }
  try {
    const Pose target = forward_kinematics(model, q_end);
    const Trajectory tl = plan_movel(model, q_start, target, limits.linear_velocity,
                                     limits.linear_acceleration);
    out.movel_report = simulate_energy(model, tl, payload);
    out.e_movel = out.movel_report.e_grid;
  } catch (const Error& e) {
    out.movel_error = e.what();
    out.e_movel = nan;
  }

  if (out.movej_error && out.movel_error) {
    throw Error(ErrorCode::kNoFeasiblePlan,
                "select_command: neither command is feasible (" + *out.movej_error +
                    "; " + *out.movel_error + ")");
  }
  if (out.movej_error) {
    out.recommended = CommandKind::kMoveLinear;
  } else if (out.movel_error) {
    out.recommended = CommandKind::kMoveJoint;
  } else {
    out.recommended = out.e_movel < out.e_movej ? CommandKind::kMoveLinear
                                                : CommandKind::kMoveJoint;
    const double best = std::min(out.e_movej, out.e_movel);
    const double worst = std::max(out.e_movej, out.e_movel);
    out.saving_fraction = worst > 0.0 ? (worst - best) / worst : 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Motion time
// ---------------------------------------------------------------------------

double scaled_energy(const RobotModel& model, const Trajectory& traj,
                     const Payload& payload, double k, const RegenPolicy& policy) {
  return simulate_energy(model, time_scale(model, traj, k), payload, policy).e_grid;
}

CharacteristicCurve characteristic_curve(const RobotModel& model,
                                         const Trajectory& traj_base,
                                         const Payload& payload, double k_min,
                                         double k_max, int n_points,
                                         const RegenPolicy& policy) {
  if (n_points < 3) {
    throw Error(ErrorCode::kInvalidArgument, "characteristic_curve: n_points must be >= 3");
  }
  if (!(k_min > 0.0) || !(k_max > k_min)) {
    throw Error(ErrorCode::kInvalidArgument, "characteristic_curve: need 0 < k_min < k_max");
  }
  check_trajectory(model, traj_base);

  std::vector<double> ks(n_points);
  const double ratio = k_max / k_min;
  for (int i = 0; i < n_points; ++i) {
    ks[i] = i == n_points - 1
                ? k_max
                : k_min * std::pow(ratio, static_cast<double>(i) / (n_points - 1));
  }

  struct Slot {
    bool ok = false;
    CurvePoint point;
    std::string reason;
  };
  std::vector<Slot> slots(ks.size());
  kernels::omp::for_each_index(ks.size(), [&](std::size_t i) {
    Slot& s = slots[i];
    try {
      const Trajectory scaled = time_scale(model, traj_base, ks[i]);
      s.point = {ks[i], scaled.duration(), simulate_energy(model, scaled, payload, policy).e_grid};
      s.ok = true;
    } catch (const Error& e) {
      s.reason = e.what();
    }
  });

  CharacteristicCurve curve;
  curve.base_duration = traj_base.duration();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].ok) {
      curve.points.push_back(slots[i].point);
    } else {
      curve.excluded.push_back({ks[i], slots[i].reason});
    }
  }
  if (curve.points.empty()) {
    throw Error(ErrorCode::kEmptyCurve, "characteristic_curve: no feasible scale factor");
  }
  return curve;
}

MotionTimeResult optimal_motion_time(const RobotModel& model, const Trajectory& traj_base,
                                     const Payload& payload, double k_min, double k_max,
                                     const MotionTimeOptions& options) {
  MotionTimeResult out;
  out.curve = characteristic_curve(model, traj_base, payload, k_min, k_max,
                                   options.coarse_points, options.policy);
  const auto& pts = out.curve.points;
  const auto it = std::min_element(pts.begin(), pts.end(),
                                   [](const CurvePoint& a, const CurvePoint& b) {
                                     return a.e_grid < b.e_grid;
                                   });
  const auto i = static_cast<std::size_t>(it - pts.begin());
  out.k_star = it->k;
  out.e_star = it->e_grid;

  const double lo = pts[i == 0 ? 0 : i - 1].k;
  const double hi = pts[std::min(i + 1, pts.size() - 1)].k;
  if (hi > lo) {
    const GoldenSectionResult g = golden_section_minimize(
        [&](double k) { return scaled_energy(model, traj_base, payload, k, options.policy); },
        lo, hi, options.k_tolerance);
    if (g.f < out.e_star) {
      out.k_star = g.x;
      out.e_star = g.f;
    }
  }
  out.duration_star = out.curve.base_duration * out.k_star;
  return out;
}

// ---------------------------------------------------------------------------
// Power saturation
// ---------------------------------------------------------------------------

namespace {

// Quintic Hermite segment through (q, qd, qdd) at both ends of [0, h].
struct HermiteEval {
  JointVector q, qd, qdd;
};

HermiteEval hermite(const TrajectorySample& a, const TrajectorySample& b, double h,
                    double u) {
  const JointVector dp = b.q - a.q;
  const double h2 = h * h;
  const JointVector c0 = a.q;
  const JointVector c1 = h * a.qd;
  const JointVector c2 = 0.5 * h2 * a.qdd;
  const JointVector c3 = 10.0 * dp - h * (6.0 * a.qd + 4.0 * b.qd) -
                         h2 * (1.5 * a.qdd - 0.5 * b.qdd);
  const JointVector c4 = -15.0 * dp + h * (8.0 * a.qd + 7.0 * b.qd) +
                         h2 * (1.5 * a.qdd - b.qdd);
  const JointVector c5 = 6.0 * dp - 3.0 * h * (a.qd + b.qd) -
                         0.5 * h2 * (a.qdd - b.qdd);
  HermiteEval e;
  e.q = c0 + u * (c1 + u * (c2 + u * (c3 + u * (c4 + u * c5))));
  e.qd = (c1 + u * (2.0 * c2 + u * (3.0 * c3 + u * (4.0 * c4 + u * 5.0 * c5)))) / h;
  e.qdd = (2.0 * c2 + u * (6.0 * c3 + u * (12.0 * c4 + u * 20.0 * c5))) / h2;
  return e;
}

struct Warped {
  Trajectory traj;
  std::vector<double> tau;  // original (relative) time of every output sample
};

Warped warp(const Trajectory& traj, const std::vector<double>& sigma_in) {
  const std::size_t n = traj.size();
  const double dt = traj.dt;
  const double t0 = traj.front().t;

  std::vector<double> w(n, 0.0);  // warped time at each input sample
  for (std::size_t i = 1; i < n; ++i) {
    w[i] = w[i - 1] + 0.5 * dt * (sigma_in[i - 1] + sigma_in[i]);
  }
  const double total = w.back();
  const double intervals = std::max(1.0, std::ceil(total / dt - 1e-9));
  const double c = intervals * dt / total;  // >= 1, lands on a whole sample
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = c * sigma_in[i];
    w[i] *= c;
  }

  Warped out;
  out.traj.dt = dt;
  const auto m = static_cast<std::size_t>(intervals);
  out.traj.samples.reserve(m + 1);
  out.tau.reserve(m + 1);
  std::size_t seg = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) * dt;
    if (j == 0 || j == m) {
      TrajectorySample s = j == 0 ? traj.front() : traj.back();
      s.t = t0 + t;
      out.traj.samples.push_back(std::move(s));
      out.tau.push_back(j == 0 ? 0.0 : dt * static_cast<double>(n - 1));
      continue;
    }
    while (seg + 2 < n && w[seg + 1] <= t) ++seg;
    const double slope = (sigma[seg + 1] - sigma[seg]) / dt;
    const double rest = t - w[seg];
    // Solve sigma_i u + slope u^2 / 2 = rest for the local original time u.
    double u = 2.0 * rest / (sigma[seg] + std::sqrt(sigma[seg] * sigma[seg] + 2.0 * slope * rest));
    u = std::clamp(u, 0.0, dt);
    const double s = sigma[seg] + slope * u;
    const HermiteEval e = hermite(traj.samples[seg], traj.samples[seg + 1], dt, u / dt);
    TrajectorySample out_s;
    out_s.t = t0 + t;
    out_s.q = e.q;
    out_s.qd = e.qd / s;
    out_s.qdd = e.qdd / (s * s) - e.qd * (slope / (s * s * s));
    out.traj.samples.push_back(std::move(out_s));
    out.tau.push_back(dt * static_cast<double>(seg) + u);
  }
  return out;
}

bool better_iterate(const EnergyReport& a, const EnergyReport& b) {
  if (a.e_dissipated != b.e_dissipated) return a.e_dissipated < b.e_dissipated;
  return a.e_grid < b.e_grid;
}

}  // namespace

Trajectory warp_trajectory(const Trajectory& traj, const std::vector<double>& sigma) {
  if (sigma.size() != traj.size() || traj.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "warp_trajectory: one factor per sample needed");
  }
  for (double s : sigma) {
    if (!(s >= 1.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "warp_trajectory: factors must be >= 1");
    }
  }
  return warp(traj, sigma).traj;
}

SaturationResult saturate_power(const RobotModel& model, const Trajectory& traj,
                                const Payload& payload, const SaturationOptions& options) {
  if (!(options.p_floor <= 0.0) || !(options.epsilon >= 0.0) || !(options.stretch > 1.0) ||
      options.max_iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "saturate_power: invalid options");
  }
  const RegenPolicy accounting = RegenPolicy::dissipate_all();
  PowerTrace trace = compute_power_trace(model, traj, payload, accounting);
  const EnergyReport before = integrate_energy(trace);

  SaturationResult result;
  result.traj_out = traj;
  result.e_grid_before = result.e_grid_after = before.e_grid;
  result.e_dissipated_before = result.e_dissipated_after = before.e_dissipated;

  auto violates = [&](const PowerTrace& tr) {
    return std::any_of(tr.samples.begin(), tr.samples.end(),
                       [&](const PowerSample& s) { return s.p_bus < options.p_floor; });
  };
  if (!violates(trace)) return result;

  const std::size_t n = traj.size();
  const double dt = traj.dt;
  std::vector<double> sigma(n, 1.0);
  std::vector<double> tau(n);
  for (std::size_t i = 0; i < n; ++i) tau[i] = dt * static_cast<double>(i);

  EnergyReport best = before;
  result.converged = false;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    // Weight of the stretch at every input sample: 1 inside a violating
    // interval, cosine ramp to 0 over `blend` outside it.
    std::vector<double> weight(n, 0.0);
    const auto& samples = trace.samples;
    std::size_t j = 0;
    while (j < samples.size()) {
      if (samples[j].p_bus >= options.p_floor) {
        ++j;
        continue;
      }
      std::size_t a = j, b = j;
      while (b + 1 < samples.size() && samples[b + 1].p_bus < options.p_floor) ++b;
      j = b + 1;
      while (a > 0 && samples[a - 1].p_bus < options.p_floor + options.epsilon) --a;
      while (b + 1 < samples.size() && samples[b + 1].p_bus < options.p_floor + options.epsilon) ++b;
      const double ta = tau[a], tb = tau[b];
      const double blend = std::max(25.0 * dt, 0.5 * (tb - ta));
      for (std::size_t i = 0; i < n; ++i) {
        const double x = dt * static_cast<double>(i);
        const double d = x < ta ? ta - x : (x > tb ? x - tb : 0.0);
        const double wgt = d >= blend ? 0.0 : 0.5 * (1.0 + std::cos(M_PI * d / blend));
        weight[i] = std::max(weight[i], wgt);
      }
    }
    for (std::size_t i = 0; i < n; ++i) sigma[i] *= 1.0 + (options.stretch - 1.0) * weight[i];

    Warped warped = warp(traj, sigma);
    trace = compute_power_trace(model, warped.traj, payload, accounting);
    const EnergyReport report = integrate_energy(trace);
    result.iterations = iter;
    tau = std::move(warped.tau);
    if (better_iterate(report, best)) {
      best = report;
      result.traj_out = warped.traj;
      result.e_grid_after = report.e_grid;
      result.e_dissipated_after = report.e_dissipated;
    }
    if (!violates(trace)) {
      result.traj_out = std::move(warped.traj);
      result.e_grid_after = report.e_grid;
      result.e_dissipated_after = report.e_dissipated;
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace roboenergy
