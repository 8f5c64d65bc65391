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

#include <cassert>
#include <cstdint>
#include <exception>
#include <mutex>

#include <omp.h>

#include "roboenergy/kernels.hpp"

namespace roboenergy::kernels::omp {

void evaluate_power(const RobotModel& model, const RigidBodyChain& chain,
                    const Trajectory& traj, std::span<PowerSample> out) {
  assert(out.size() == traj.size());
  const auto n = static_cast<std::int64_t>(traj.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    evaluate_power_sample(model, chain, traj.samples[i], out[i]);
  }
}

std::vector<double> standby_power_batch(const RobotModel& model,
                                        const RigidBodyChain& chain,
                                        std::span<const JointVector> configs) {
  std::vector<double> out(configs.size());
  const auto n = static_cast<std::int64_t>(configs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = standby_power_at(model, chain, configs[i]);
  }
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  // Exceptions may not cross the parallel region; keep the lowest-index one
  // so the error reported matches a sequential run.
  std::exception_ptr first_error;
  std::int64_t first_index = -1;
  std::mutex guard;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (first_index < 0 || i < first_index) {
        first_index = i;
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace roboenergy::kernels::omp
