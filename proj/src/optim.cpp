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

#include "roboenergy/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "roboenergy/error.hpp"

namespace roboenergy {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "nelder_mead: dimension mismatch");
  }
  if ((upper.array() < lower.array()).any()) {
    throw Error(ErrorCode::kInvalidArgument, "nelder_mead: empty box");
  }

  NelderMeadResult result;
  auto project = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x.cwiseMax(lower).cwiseMin(upper);
  };
  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    return f(x);
  };

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  simplex.push_back(project(x0));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = simplex.front();
    const double step = options.initial_step * (upper[i] - lower[i]);
    v[i] = v[i] + step <= upper[i] ? v[i] + step : v[i] - step;
    simplex.push_back(project(v));
  }
  for (const auto& v : simplex) values.push_back(eval(v));

  std::vector<std::size_t> order(simplex.size());
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      diameter = std::max(diameter, (v - simplex[best]).cwiseAbs().maxCoeff());
    }
    const double spread = values[worst] - values[best];
    if (diameter <= options.x_tolerance ||
        spread <= options.f_tolerance * (std::abs(values[best]) + 1.0)) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = project(centroid + (centroid - simplex[worst]));
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded = project(centroid + 2.0 * (centroid - simplex[worst]));
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const Eigen::VectorXd contracted =
        outside ? project(centroid + 0.5 * (reflected - centroid))
                : project(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    // Shrink towards the best vertex.
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = project(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.f = values[best];
  return result;
}

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f,
                                            double a, double b, double tolerance,
                                            int max_iterations) {
  if (!(a <= b) || !(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "golden_section: need a <= b and tolerance > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenSectionResult r;
  while (b - a > tolerance && r.iterations < max_iterations) {
    ++r.iterations;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    r.x = c;
    r.f = fc;
  } else {
    r.x = d;
    r.f = fd;
  }
  return r;
}

}  // namespace roboenergy
