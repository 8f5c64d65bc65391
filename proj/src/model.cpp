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

#include "roboenergy/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "roboenergy/error.hpp"

namespace roboenergy {

namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

bool finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

void RobotModel::validate() const {
  const int n = dof();
  if (n < 1 || n > kMaxDof) invalid("model must have 1..6 joints");
  if (static_cast<int>(motors.size()) != n ||
      static_cast<int>(limits.size()) != n) {
    invalid("links, motors and limits must have equal length");
  }
  if (!(p_baseline >= 0.0) || !std::isfinite(p_baseline)) {
    invalid("p_baseline must be finite and >= 0");
  }
  if (!gravity.allFinite()) invalid("gravity must be finite");
  for (int i = 0; i < n; ++i) {
    std::ostringstream where;
    where << "joint " << (i + 1) << ": ";
    const LinkParams& l = links[i];
    if (!std::isfinite(l.dh_a) || !std::isfinite(l.dh_d) ||
        !std::isfinite(l.dh_alpha) || !finite(l.com) || !finite(l.inertia)) {
      invalid(where.str() + "link parameters must be finite");
    }
    if (!(l.mass > 0.0)) invalid(where.str() + "mass must be > 0");
    if ((l.inertia - l.inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      invalid(where.str() + "inertia must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(l.inertia);
    if (eig.eigenvalues().minCoeff() < -1e-12) {
      invalid(where.str() + "inertia must be positive semi-definite");
    }
    const MotorParams& m = motors[i];
    if (!(m.kt_eff > 0.0)) invalid(where.str() + "kt_eff must be > 0");
    if (!(m.r_winding > 0.0)) invalid(where.str() + "r_winding must be > 0");
    if (!(m.visc_friction >= 0.0) || !(m.coul_friction >= 0.0)) {
      invalid(where.str() + "friction coefficients must be >= 0");
    }
    if (!(m.thermal_res > 0.0) || !(m.thermal_tau > 0.0)) {
      invalid(where.str() + "thermal parameters must be > 0");
    }
    const JointLimits& lim = limits[i];
    if (!(lim.q_min < lim.q_max)) invalid(where.str() + "q_min must be < q_max");
    if (!(lim.v_max > 0.0) || !(lim.a_max > 0.0)) {
      invalid(where.str() + "v_max and a_max must be > 0");
    }
  }
}

bool within_position_limits(const RobotModel& model, const JointVector& q,
                            double tol) {
  if (q.size() != model.dof()) return false;
  for (int i = 0; i < model.dof(); ++i) {
    if (q[i] < model.limits[i].q_min - tol || q[i] > model.limits[i].q_max + tol) {
      return false;
    }
  }
  return true;
}

void require_joint_vector(const RobotModel& model, const JointVector& q,
                          const char* what) {
  if (q.size() != model.dof()) {
    std::ostringstream msg;
    msg << what << ": expected " << model.dof() << " joint values, got "
        << q.size();
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
  if (!q.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": joint values must be finite");
  }
}

void require_within_limits(const RobotModel& model, const JointVector& q,
                           const char* what) {
  require_joint_vector(model, q, what);
  for (int i = 0; i < model.dof(); ++i) {
    const JointLimits& lim = model.limits[i];
    if (q[i] < lim.q_min - 1e-12 || q[i] > lim.q_max + 1e-12) {
      std::ostringstream msg;
      msg << what << ": joint " << (i + 1) << " = " << q[i]
          << " outside [" << lim.q_min << ", " << lim.q_max << "]";
      throw Error(ErrorCode::kLimitViolation, msg.str());
    }
  }
}

}  // namespace roboenergy
