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

#include <functional>

#include <Eigen/Core>

namespace roboenergy {

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double x_tolerance = 1e-9;   // simplex diameter (inf-norm)
  double f_tolerance = 1e-13;  // spread of vertex values, relative to |f_best| + 1
  double initial_step = 0.1;   // fraction of the box width
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Downhill simplex minimization. Every trial point is projected onto the
// box [lower, upper] before evaluation, so f only ever sees feasible points.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper,
                             const NelderMeadOptions& options = {});

struct GoldenSectionResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

// Minimizes a unimodal f on [a, b] until the bracket is no wider than
// `tolerance`; returns the better interior probe.
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f,
                                            double a, double b, double tolerance,
                                            int max_iterations = 200);

}  // namespace roboenergy
