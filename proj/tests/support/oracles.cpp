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

#include "oracles.hpp"

#include <cmath>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/model_io.hpp"

namespace oracle {

using namespace roboenergy;

namespace {

MotorParams motor(double kt, double r) {
  MotorParams m;
  m.kt_eff = kt;
  m.r_winding = r;
  m.thermal_res = 1.0;
  m.thermal_tau = 100.0;
  return m;
}

JointLimits wide() { return {-M_PI, M_PI, 50.0, 500.0}; }

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return s;
}

// exp of a unit-axis screw (w, v) over angle theta.
Eigen::Isometry3d screw_exp(const Eigen::Vector3d& w, const Eigen::Vector3d& v, double theta) {
  const Eigen::Matrix3d W = skew(w);
  const Eigen::Matrix3d r =
      Eigen::Matrix3d::Identity() + std::sin(theta) * W + (1 - std::cos(theta)) * W * W;
  const Eigen::Matrix3d g = Eigen::Matrix3d::Identity() * theta + (1 - std::cos(theta)) * W +
                            (theta - std::sin(theta)) * W * W;
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = r;
  t.translation() = g * v;
  return t;
}

Eigen::Isometry3d std_dh(double d, double a, double alpha, double theta) {
  Eigen::Matrix4d m;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  m << ct, -st * ca, st * sa, a * ct,
       st, ct * ca, -ct * sa, a * st,
       0, sa, ca, d,
       0, 0, 0, 1;
  Eigen::Isometry3d t;
  t.matrix() = m;
  return t;
}

}  // namespace

RobotModel pendulum(double m, double r, double kt, double r_winding, double p_baseline) {
  RobotModel model;
  model.name = "pendulum";
  LinkParams l;
  l.mass = m;
  l.com = {r, 0.0, 0.0};
  model.links = {l};
  model.motors = {motor(kt, r_winding)};
  model.limits = {wide()};
  model.p_baseline = p_baseline;
  model.gravity = {9.81, 0.0, 0.0};
  model.validate();
  return model;
}

RobotModel two_link(const TwoLink& p, double p_baseline) {
  RobotModel model;
  model.name = "two-link";
  LinkParams a, b;
  a.mass = p.m1;
  a.com = {p.lc1, 0.0, 0.0};
  a.inertia = Eigen::Vector3d(0.3 * p.i1, 0.7 * p.i1, p.i1).asDiagonal();
  b.dh_a = p.l1;
  b.mass = p.m2;
  b.com = {p.lc2, 0.0, 0.0};
  b.inertia = Eigen::Vector3d(0.2 * p.i2, 0.9 * p.i2, p.i2).asDiagonal();
  model.links = {a, b};
  model.flange.a = p.l2;
  model.motors = {motor(8.0, 0.7), motor(5.0, 1.1)};
  model.limits = {wide(), wide()};
  model.p_baseline = p_baseline;
  model.gravity = {p.g.x(), p.g.y(), 0.0};
  model.validate();
  return model;
}

Eigen::Vector2d two_link_torque(const TwoLink& p, const Eigen::Vector2d& q,
                                const Eigen::Vector2d& qd, const Eigen::Vector2d& qdd) {
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double m11 = p.m1 * p.lc1 * p.lc1 + p.i1 +
                     p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2 * p.l1 * p.lc2 * c2) + p.i2;
  const double m12 = p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2) + p.i2;
  const double m22 = p.m2 * p.lc2 * p.lc2 + p.i2;
  const double h = -p.m2 * p.l1 * p.lc2 * s2;

  // U = -sum m g.p; G = dU/dq
  const double s1 = std::sin(q[0]), c1 = std::cos(q[0]);
  const double s12 = std::sin(q[0] + q[1]), c12 = std::cos(q[0] + q[1]);
  const double gx = p.g.x(), gy = p.g.y();
  const double d1 = -s1 * gx + c1 * gy;
  const double d12 = -s12 * gx + c12 * gy;
  const double g1 = -(p.m1 * p.lc1 * d1 + p.m2 * (p.l1 * d1 + p.lc2 * d12));
  const double g2 = -p.m2 * p.lc2 * d12;

  Eigen::Vector2d tau;
  tau[0] = m11 * qdd[0] + m12 * qdd[1] + h * qd[1] * qd[1] + 2 * h * qd[0] * qd[1] + g1;
  tau[1] = m12 * qdd[0] + m22 * qdd[1] - h * qd[0] * qd[0] + g2;
  return tau;
}

RobotModel inertia_joint(double j, double kt, double r_winding, double p_baseline) {
  RobotModel model;
  model.name = "rotor";
  LinkParams l;
  l.mass = 1.0;
  l.inertia = Eigen::Vector3d(j, j, j).asDiagonal();
  model.links = {l};
  model.motors = {motor(kt, r_winding)};
  model.limits = {{-10.0, 10.0, 50.0, 500.0}};
  model.p_baseline = p_baseline;
  model.gravity = Eigen::Vector3d::Zero();
  model.validate();
  return model;
}

RobotModel lossless(RobotModel model) {
  for (MotorParams& m : model.motors) {
    m.visc_friction = 0.0;
    m.coul_friction = 0.0;
    m.r_winding = 1e-300;
  }
  model.p_baseline = 0.0;
  return model;
}

StandardDh ur10e_standard_dh() {
  const double h = M_PI / 2;
  return {{0.1807, 0, 0, 0.17415, 0.11985, 0.11655},
          {0, -0.6127, -0.57155, 0, 0, 0},
          {h, 0, 0, h, -h, 0}};
}

Eigen::Isometry3d poe_fk(const StandardDh& dh, const JointVector& q) {
  // Zero-pose frames: joint i turns about z of frame i-1.
  Eigen::Isometry3d frame = Eigen::Isometry3d::Identity();
  std::array<Eigen::Vector3d, 6> w, v;
  for (int i = 0; i < 6; ++i) {
    w[i] = frame.linear().col(2);
    const Eigen::Vector3d p = frame.translation();
    v[i] = -w[i].cross(p);
    frame = frame * std_dh(dh.d[i], dh.a[i], dh.alpha[i], 0.0);
  }
  const Eigen::Isometry3d home = frame;
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  for (int i = 0; i < 6; ++i) t = t * screw_exp(w[i], v[i], q[i]);
  return t * home;
}

double trapezoid_duration(double distance, double v, double a) {
  if (distance <= v * v / a) return 2.0 * std::sqrt(distance / a);
  return distance / v + v / a;
}

double thermal_step(double ambient, double r_th, double tau, double loss, double t) {
  return ambient + r_th * loss * (1.0 - std::exp(-t / tau));
}

double trapezoid(const std::vector<double>& y, double dt) {
  double s = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) s += 0.5 * (y[i - 1] + y[i]) * dt;
  return s;
}

JointVector random_in_box(const RobotModel& model, std::mt19937_64& rng, double lo, double hi) {
  JointVector q(model.dof());
  for (int i = 0; i < model.dof(); ++i) {
    std::uniform_real_distribution<double> u(std::max(lo, model.limits[i].q_min),
                                             std::min(hi, model.limits[i].q_max));
    q[i] = u(rng);
  }
  return q;
}

Trajectory quintic(const JointVector& a, const JointVector& b, double t, double dt) {
  const auto n = static_cast<std::size_t>(std::llround(t / dt));
  Trajectory traj;
  traj.dt = dt;
  const JointVector d = b - a;
  for (std::size_t i = 0; i <= n; ++i) {
    const double tau = static_cast<double>(i) / static_cast<double>(n);
    const double s = tau * tau * tau * (10 - 15 * tau + 6 * tau * tau);
    const double sd = 30 * tau * tau * (1 - tau) * (1 - tau) / t;
    const double sdd = 60 * tau * (1 - tau) * (1 - 2 * tau) / (t * t);
    TrajectorySample x;
    x.t = static_cast<double>(i) * dt;
    x.q = a + s * d;
    x.qd = sd * d;
    x.qdd = sdd * d;
    traj.samples.push_back(x);
  }
  traj.samples.back().q = b;
  return traj;
}

PlannedMove random_move(const RobotModel& model, const Fixtures& fx, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> off(-0.7, 0.7), v(0.5, 2.0), a(1.0, 10.0), m(0.0, 10.0);
  PlannedMove move;
  move.q_start = fx.reference_standby;
  move.q_end = fx.reference_standby;
  for (int i = 0; i < model.dof(); ++i) {
    move.q_start[i] += off(rng);
    move.q_end[i] += off(rng);
  }
  move.v_limit = v(rng);
  move.a_limit = a(rng);
  move.payload.mass = m(rng);
  move.payload.com_offset = {0.0, 0.0, 0.05};
  return move;
}

ScaledEnergy::ScaledEnergy(const RobotModel& model, const Trajectory& traj,
                           const Payload& payload)
    : model_(model), traj_(traj) {
  for (const TrajectorySample& s : traj.samples) {
    const JointVector g = gravity_torque(model, s.q, payload);
    inertial_.push_back(inverse_dynamics(model, s.q, s.qd, s.qdd, payload) - g);
    gravity_.push_back(g);
  }
}

double ScaledEnergy::operator()(double k) const {
  const int n = model_.dof();
  std::vector<double> p_grid;
  p_grid.reserve(traj_.size());
  for (std::size_t i = 0; i < traj_.size(); ++i) {
    const TrajectorySample& s = traj_.samples[i];
    double bus = model_.p_baseline;
    for (int j = 0; j < n; ++j) {
      const JointLimits& lim = model_.limits[j];
      const double w = s.qd[j] / k;
      if (std::abs(w) > lim.v_max * (1 + 1e-9) ||
          std::abs(s.qdd[j] / (k * k)) > lim.a_max * (1 + 1e-9)) {
        return std::nan("");
      }
      const MotorParams& mp = model_.motors[j];
      const double sign = w > 0 ? 1.0 : (w < 0 ? -1.0 : 0.0);
      const double tau = inertial_[i][j] / (k * k) + gravity_[i][j] + mp.visc_friction * w +
                         mp.coul_friction * sign;
      const double cur = tau / mp.kt_eff;
      bus += tau * w + cur * cur * mp.r_winding;
    }
    p_grid.push_back(std::max(bus, 0.0));
  }
  return trapezoid(p_grid, traj_.dt * k);
}

RobotModel shipped(const char* stem) {
  return load_robot(data_dir() / "robots" / (std::string(stem) + ".json"));
}

}  // namespace oracle
