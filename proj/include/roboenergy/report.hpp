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

#include <filesystem>
#include <string>
#include <vector>

#include "roboenergy/assessment.hpp"

namespace roboenergy {

struct GroupStats {
  std::string value;  // the parameter value shared by the group, as text
  std::size_t count = 0;
  double e_grid_min = 0.0;
  double e_grid_max = 0.0;
  double e_grid_mean = 0.0;
};

// Aggregation of feasible rows over one sweep dimension.
struct CriterionSummary {
  std::string criterion;  // configuration, payload, command, v_limit, a_limit, profile
  std::vector<GroupStats> groups;  // in first-appearance order
  std::string best;   // group value with the lowest mean e_grid
  std::string worst;  // group value with the highest mean e_grid
};

struct Report {
  std::size_t rows_total = 0;
  std::size_t rows_feasible = 0;
  std::vector<CriterionSummary> criteria;
  // Command means within each (v_limit, a_limit) setting.
  struct SpeedSetting {
    std::string v_limit;
    std::string a_limit;
    CriterionSummary commands;
  };
  std::vector<SpeedSetting> command_by_speed;
  std::vector<std::pair<std::size_t, std::string>> infeasible;  // index, reason
};

// Throws kEmptyTable when no row is feasible.
Report summarize(const AssessmentTable& table);

std::string report_json(const AssessmentTable& table, const Report& report);
// One (duration, e_grid) pair per feasible row.
std::string ec_vs_time_csv(const AssessmentTable& table);

// Writes summary.json and plot_ec_vs_time.csv into out_dir.
Report emit_report(const AssessmentTable& table, const std::filesystem::path& out_dir);

}  // namespace roboenergy
