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

#include "roboenergy/dynamics.hpp"

#include <array>
#include <cmath>

#include "roboenergy/kinematics.hpp"

namespace roboenergy {

namespace {

Eigen::Matrix3d point_mass_inertia(double mass, const Eigen::Vector3d& r) {
  return mass * (r.squaredNorm() * Eigen::Matrix3d::Identity() - r * r.transpose());
}

Eigen::Vector3d payload_position(const RobotModel& model, const Payload& payload) {
  const FlangeOffset& f = model.flange;
  return modified_dh(f.a, f.alpha, f.d, 0.0) * payload.com_offset;
}

}  // namespace

RigidBodyChain::RigidBodyChain(const RobotModel& model, const Payload& payload)
    : gravity_(model.gravity) {
  links_.reserve(model.dof());
  for (const LinkParams& l : model.links) {
    links_.push_back({l.dh_a, l.dh_d, std::cos(l.dh_alpha), std::sin(l.dh_alpha),
                      l.mass, l.com, l.inertia});
  }
  if (payload.mass > 0.0 && !links_.empty()) {
    Link& last = links_.back();
    const Eigen::Vector3d p = payload_position(model, payload);
    const double m = last.mass + payload.mass;
    const Eigen::Vector3d c = (last.mass * last.com + payload.mass * p) / m;
    last.inertia = last.inertia + point_mass_inertia(last.mass, last.com - c) +
                   point_mass_inertia(payload.mass, p - c);
    last.mass = m;
    last.com = c;
  }
}

JointVector RigidBodyChain::inverse_dynamics(const JointVector& q,
                                             const JointVector& qd,
                                             const JointVector& qdd) const {
  return inverse_dynamics(q, qd, qdd, gravity_);
}

JointVector RigidBodyChain::inverse_dynamics(const JointVector& q,
                                             const JointVector& qd,
                                             const JointVector& qdd,
                                             const Eigen::Vector3d& gravity) const {
  const int n = dof();
  // rot[i]: orientation of frame i in frame i-1; pos[i]: its origin.
  std::array<Eigen::Matrix3d, kMaxDof> rot;
  std::array<Eigen::Vector3d, kMaxDof> pos, force, moment;
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();

  Eigen::Vector3d w = Eigen::Vector3d::Zero();
  Eigen::Vector3d wd = Eigen::Vector3d::Zero();
  Eigen::Vector3d vd = -gravity;
  for (int i = 0; i < n; ++i) {
    const Link& l = links_[i];
    const double ct = std::cos(q[i]), st = std::sin(q[i]);
    rot[i] << ct, -st, 0.0,
              st * l.cos_alpha, ct * l.cos_alpha, -l.sin_alpha,
              st * l.sin_alpha, ct * l.sin_alpha, l.cos_alpha;
    pos[i] << l.a, -l.sin_alpha * l.d, l.cos_alpha * l.d;

    const Eigen::Matrix3d rt = rot[i].transpose();
    const Eigen::Vector3d w_prev_local = rt * w;
    vd = rt * (wd.cross(pos[i]) + w.cross(w.cross(pos[i])) + vd);
    wd = rt * wd + w_prev_local.cross(qd[i] * z) + qdd[i] * z;
    w = w_prev_local + qd[i] * z;

    const Eigen::Vector3d vdc = wd.cross(l.com) + w.cross(w.cross(l.com)) + vd;
    force[i] = l.mass * vdc;
    moment[i] = l.inertia * wd + w.cross(l.inertia * w);
  }

  JointVector tau(n);
  Eigen::Vector3d f = Eigen::Vector3d::Zero();
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
  for (int i = n - 1; i >= 0; --i) {
    Eigen::Vector3d f_child = Eigen::Vector3d::Zero();
    Eigen::Vector3d m_child = Eigen::Vector3d::Zero();
    if (i + 1 < n) {
      f_child = rot[i + 1] * f;
      m_child = rot[i + 1] * m + pos[i + 1].cross(f_child);
    }
    f = f_child + force[i];
    m = moment[i] + m_child + links_[i].com.cross(force[i]);
    tau[i] = m.z();
  }
  return tau;
}

JointVector inverse_dynamics(const RobotModel& model, const JointVector& q,
                             const JointVector& qd, const JointVector& qdd,
                             const Payload& payload) {
  require_joint_vector(model, q, "inverse_dynamics q");
  require_joint_vector(model, qd, "inverse_dynamics qd");
  require_joint_vector(model, qdd, "inverse_dynamics qdd");
  return RigidBodyChain(model, payload).inverse_dynamics(q, qd, qdd);
}

JointVector gravity_torque(const RobotModel& model, const JointVector& q,
                           const Payload& payload) {
  require_joint_vector(model, q, "gravity_torque");
  const JointVector zero = JointVector::Zero(model.dof());
  return RigidBodyChain(model, payload).inverse_dynamics(q, zero, zero);
}

JointMatrix mass_matrix(const RobotModel& model, const JointVector& q,
                        const Payload& payload) {
  require_joint_vector(model, q, "mass_matrix");
  const int n = model.dof();
  const RigidBodyChain chain(model, payload);
  const JointVector zero = JointVector::Zero(n);
  JointMatrix mm(n, n);
  for (int j = 0; j < n; ++j) {
    JointVector probe = JointVector::Zero(n);
    probe[j] = 1.0;
    mm.col(j) = chain.inverse_dynamics(q, zero, probe, Eigen::Vector3d::Zero());
  }
  return mm;
}

double potential_energy(const RobotModel& model, const JointVector& q,
                        const Payload& payload) {
  const auto frames = joint_frames(model, q);
  double u = 0.0;
  for (int i = 0; i < model.dof(); ++i) {
    const Eigen::Vector3d c = frames[i] * model.links[i].com;
    u -= model.links[i].mass * model.gravity.dot(c);
  }
  if (payload.mass > 0.0) {
    u -= payload.mass * model.gravity.dot(frames.back() * payload.com_offset);
  }
  return u;
}

double kinetic_energy(const RobotModel& model, const JointVector& q,
                      const JointVector& qd, const Payload& payload) {
  require_joint_vector(model, qd, "kinetic_energy qd");
  const auto frames = joint_frames(model, q);
  const int n = model.dof();

  auto point_velocity = [&](int link, const Eigen::Vector3d& p) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int j = 0; j <= link; ++j) {
      const Eigen::Vector3d zj = frames[j].rotation().col(2);
      v += qd[j] * zj.cross(p - frames[j].translation());
    }
    return v;
  };

  double t = 0.0;
  Eigen::Vector3d w = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    w += qd[i] * frames[i].rotation().col(2);
    const Eigen::Matrix3d r = frames[i].rotation();
    const Eigen::Vector3d c = frames[i] * model.links[i].com;
    const Eigen::Vector3d v = point_velocity(i, c);
    t += 0.5 * model.links[i].mass * v.squaredNorm();
    t += 0.5 * w.dot(r * model.links[i].inertia * r.transpose() * w);
  }
  if (payload.mass > 0.0) {
    const Eigen::Vector3d v = point_velocity(n - 1, frames.back() * payload.com_offset);
    t += 0.5 * payload.mass * v.squaredNorm();
  }
  return t;
}

}  // namespace roboenergy
