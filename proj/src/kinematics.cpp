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

#include "roboenergy/kinematics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "roboenergy/error.hpp"

namespace roboenergy {

Eigen::Isometry3d modified_dh(double a, double alpha, double d, double theta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double ct = std::cos(theta), st = std::sin(theta);
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() << ct, -st, 0.0,
       st * ca, ct * ca, -sa,
       st * sa, ct * sa, ca;
  t.translation() << a, -sa * d, ca * d;
  return t;
}

std::vector<Eigen::Isometry3d> joint_frames(const RobotModel& model,
                                            const JointVector& q) {
  require_joint_vector(model, q, "joint_frames");
  std::vector<Eigen::Isometry3d> frames;
  frames.reserve(model.dof() + 1);
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  for (int i = 0; i < model.dof(); ++i) {
    const LinkParams& l = model.links[i];
    t = t * modified_dh(l.dh_a, l.dh_alpha, l.dh_d, q[i]);
    frames.push_back(t);
  }
  const FlangeOffset& f = model.flange;
  frames.push_back(t * modified_dh(f.a, f.alpha, f.d, 0.0));
  return frames;
}

Pose forward_kinematics(const RobotModel& model, const JointVector& q) {
  const Eigen::Isometry3d flange = joint_frames(model, q).back();
  Pose pose;
  pose.position = flange.translation();
  pose.orientation = Eigen::Quaterniond(flange.rotation()).normalized();
  return pose;
}

JacobianMatrix jacobian(const RobotModel& model, const JointVector& q) {
  const auto frames = joint_frames(model, q);
  const Eigen::Vector3d tip = frames.back().translation();
  JacobianMatrix j(6, model.dof());
  for (int i = 0; i < model.dof(); ++i) {
    const Eigen::Vector3d z = frames[i].rotation().col(2);
    const Eigen::Vector3d o = frames[i].translation();
    j.block<3, 1>(0, i) = z.cross(tip - o);
    j.block<3, 1>(3, i) = z;
  }
  return j;
}

double manipulability(const JacobianMatrix& j) {
  const Eigen::Matrix<double, 6, 6> jjt = j * j.transpose();
  return std::sqrt(std::max(0.0, jjt.determinant()));
}

double smallest_singular_value(const JacobianMatrix& j) {
  const Eigen::MatrixXd dense = j;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
  const auto& s = svd.singularValues();
  // A 6 x n map with n < 6 always has a zero singular value in task space.
  if (j.cols() < 6) return 0.0;
  return s[s.size() - 1];
}

Eigen::Vector3d orientation_error(const Eigen::Quaterniond& to,
                                  const Eigen::Quaterniond& from) {
  Eigen::Quaterniond delta = to * from.conjugate();
  if (delta.w() < 0.0) delta.coeffs() *= -1.0;
  const Eigen::AngleAxisd aa(delta.normalized());
  return aa.axis() * aa.angle();
}

JointVector inverse_kinematics(const RobotModel& model, const Pose& target,
                               const JointVector& seed,
                               const IkOptions& options) {
  require_within_limits(model, seed, "inverse_kinematics seed");
  if (!target.position.allFinite() || !target.orientation.coeffs().allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "inverse_kinematics: non-finite target");
  }
  const Eigen::Quaterniond target_rot = target.orientation.normalized();
  const double lambda2 = options.damping * options.damping;

  JointVector q = seed;
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const Pose current = forward_kinematics(model, q);
    Eigen::Matrix<double, 6, 1> err;
    err.head<3>() = target.position - current.position;
    err.tail<3>() = orientation_error(target_rot, current.orientation);
    if (err.head<3>().norm() <= options.position_tolerance &&
        err.tail<3>().norm() <= options.orientation_tolerance) {
      const JacobianMatrix j = jacobian(model, q);
      if (manipulability(j) < options.manipulability_threshold) {
        throw Error(ErrorCode::kNearSingularity,
                    "inverse_kinematics: solution is near a singularity");
      }
      if (!within_position_limits(model, q)) {
        throw Error(ErrorCode::kLimitViolation,
                    "inverse_kinematics: solution outside joint limits");
      }
      return q;
    }
    if (iter == options.max_iterations) break;

    const JacobianMatrix j = jacobian(model, q);
    const Eigen::Matrix<double, 6, 6> jjt =
        j * j.transpose() + lambda2 * Eigen::Matrix<double, 6, 6>::Identity();
    JointVector dq = j.transpose() * jjt.ldlt().solve(err);
    const double step = dq.norm();
    if (step > options.max_step) dq *= options.max_step / step;
    q += dq;
  }
  std::ostringstream msg;
  msg << "inverse_kinematics: no convergence after " << options.max_iterations
      << " iterations";
  throw Error(ErrorCode::kNoConvergence, msg.str());
}

}  // namespace roboenergy
