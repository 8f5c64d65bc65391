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

// Serial reference versus OpenMP kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "roboenergy/dynamics.hpp"
#include "roboenergy/fixtures.hpp"
#include "roboenergy/kernels.hpp"
#include "roboenergy/model_io.hpp"

namespace {

using namespace roboenergy;

struct Setup {
  RobotModel model = load_robot(data_dir() / "robots" / "ur10e_like.json");
  Fixtures fx = load_fixtures(fixtures_path_for(model));
  Trajectory traj = plan(model, fx.motion_time.move);
  RigidBodyChain chain{model, fx.motion_time.move.payload};
  std::vector<JointVector> configs;

  Setup() {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20000; ++k) {
      JointVector q(model.dof());
      for (int j = 0; j < model.dof(); ++j) {
        std::uniform_real_distribution<double> u(model.limits[j].q_min, model.limits[j].q_max);
        q[j] = u(rng);
      }
      configs.push_back(q);
    }
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_PowerSerial(benchmark::State& state) {
  const Setup& s = setup();
  std::vector<PowerSample> out(s.traj.size());
  for (auto _ : state) {
    kernels::serial::evaluate_power(s.model, s.chain, s.traj, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.traj.size()));
}

void BM_PowerOmp(benchmark::State& state) {
  const Setup& s = setup();
  std::vector<PowerSample> out(s.traj.size());
  for (auto _ : state) {
    kernels::omp::evaluate_power(s.model, s.chain, s.traj, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.traj.size()));
  state.counters["threads"] = kernels::omp::max_threads();
}

void BM_StandbySerial(benchmark::State& state) {
  const Setup& s = setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::standby_power_batch(s.model, s.chain, s.configs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.configs.size()));
}

void BM_StandbyOmp(benchmark::State& state) {
  const Setup& s = setup();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::standby_power_batch(s.model, s.chain, s.configs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.configs.size()));
  state.counters["threads"] = kernels::omp::max_threads();
}

}  // namespace

BENCHMARK(BM_PowerSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PowerOmp)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StandbySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StandbyOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
