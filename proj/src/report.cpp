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

#include "roboenergy/report.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "json_util.hpp"
#include "roboenergy/trajectory_io.hpp"

namespace roboenergy {

using detail::Json;

namespace {

std::string limit_text(const LimitSetting& s) {
  return format_double(s.joint) + "/" + format_double(s.linear);
}

CriterionSummary aggregate(const std::string& criterion, const std::vector<const AssessmentRow*>& rows,
                           const std::function<std::string(const AssessmentRow&)>& key) {
  CriterionSummary out;
  out.criterion = criterion;
  std::vector<double> sums;
  for (const AssessmentRow* r : rows) {
    const std::string k = key(*r);
    auto it = std::find_if(out.groups.begin(), out.groups.end(),
                           [&](const GroupStats& g) { return g.value == k; });
    const double e = r->energy.e_grid;
    if (it == out.groups.end()) {
      out.groups.push_back({k, 1, e, e, 0.0});
      sums.push_back(e);
    } else {
      const auto i = static_cast<std::size_t>(it - out.groups.begin());
      ++it->count;
      it->e_grid_min = std::min(it->e_grid_min, e);
      it->e_grid_max = std::max(it->e_grid_max, e);
      sums[i] += e;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  double worst = -best;
  for (std::size_t i = 0; i < out.groups.size(); ++i) {
    GroupStats& g = out.groups[i];
    // A constant group reports its value exactly.
    g.e_grid_mean = g.e_grid_min == g.e_grid_max ? g.e_grid_min
                                                 : sums[i] / static_cast<double>(g.count);
    if (g.e_grid_mean < best) {
      best = g.e_grid_mean;
      out.best = g.value;
    }
    if (g.e_grid_mean > worst) {
      worst = g.e_grid_mean;
      out.worst = g.value;
    }
  }
  return out;
}

Json criterion_json(const CriterionSummary& c) {
  Json groups = Json::array();
  for (const GroupStats& g : c.groups) {
    groups.push_back({{"value", g.value},
                      {"count", g.count},
                      {"e_grid_min", g.e_grid_min},
                      {"e_grid_max", g.e_grid_max},
                      {"e_grid_mean", g.e_grid_mean}});
  }
  return {{"criterion", c.criterion}, {"best", c.best}, {"worst", c.worst}, {"groups", groups}};
}

}  // namespace

Report summarize(const AssessmentTable& table) {
  std::vector<const AssessmentRow*> ok;
  Report report;
  report.rows_total = table.rows.size();
  for (const AssessmentRow& r : table.rows) {
    if (r.feasible) {
      ok.push_back(&r);
    } else {
      report.infeasible.emplace_back(r.index, r.reason);
    }
  }
  if (ok.empty()) throw Error(ErrorCode::kEmptyTable, "report: no feasible rows");
  report.rows_feasible = ok.size();

  report.criteria.push_back(
      aggregate("configuration", ok, [](const AssessmentRow& r) { return r.configuration; }));
  report.criteria.push_back(
      aggregate("payload", ok, [](const AssessmentRow& r) { return format_double(r.payload); }));
  report.criteria.push_back(aggregate(
      "command", ok, [](const AssessmentRow& r) { return std::string(to_string(r.command)); }));
  report.criteria.push_back(
      aggregate("v_limit", ok, [](const AssessmentRow& r) { return limit_text(r.v_limit); }));
  report.criteria.push_back(
      aggregate("a_limit", ok, [](const AssessmentRow& r) { return limit_text(r.a_limit); }));
  report.criteria.push_back(aggregate(
      "profile", ok, [](const AssessmentRow& r) { return std::string(to_string(r.profile)); }));

  for (const GroupStats& v : report.criteria[3].groups) {
    for (const GroupStats& a : report.criteria[4].groups) {
      std::vector<const AssessmentRow*> subset;
      for (const AssessmentRow* r : ok) {
        if (limit_text(r->v_limit) == v.value && limit_text(r->a_limit) == a.value) {
          subset.push_back(r);
        }
      }
      if (subset.empty()) continue;
      report.command_by_speed.push_back(
          {v.value, a.value, aggregate("command", subset, [](const AssessmentRow& r) {
             return std::string(to_string(r.command));
           })});
    }
  }
  return report;
}

std::string report_json(const AssessmentTable& table, const Report& report) {
  Json root;
  root["schema_version"] = 1;
  root["robot"] = table.robot;
  root["seed"] = table.seed;
  root["data_source"] = "simulated";
  root["rows_total"] = report.rows_total;
  root["rows_feasible"] = report.rows_feasible;
  root["rows_infeasible"] = report.rows_total - report.rows_feasible;
  Json criteria = Json::array();
  for (const CriterionSummary& c : report.criteria) criteria.push_back(criterion_json(c));
  root["criteria"] = criteria;
  Json by_speed = Json::array();
  for (const Report::SpeedSetting& s : report.command_by_speed) {
    Json entry;
    entry["v_limit"] = s.v_limit;
    entry["a_limit"] = s.a_limit;
    const Json commands = criterion_json(s.commands);
    for (const auto& [k, val] : commands.items()) entry[k] = val;
    by_speed.push_back(entry);
  }
  root["command_by_speed"] = by_speed;
  Json infeasible = Json::array();
  for (const auto& [index, reason] : report.infeasible) {
    infeasible.push_back({{"index", index}, {"reason", reason}});
  }
  root["infeasible"] = infeasible;
  return root.dump(2) + "\n";
}

std::string ec_vs_time_csv(const AssessmentTable& table) {
  std::ostringstream out;
  out << "index,duration,e_grid\n";
  for (const AssessmentRow& r : table.rows) {
    if (!r.feasible) continue;
    out << r.index << ',' << format_double(r.energy.duration) << ','
        << format_double(r.energy.e_grid) << '\n';
  }
  return out.str();
}

Report emit_report(const AssessmentTable& table, const std::filesystem::path& out_dir) {
  Report report = summarize(table);
  std::filesystem::create_directories(out_dir);
  detail::write_text(out_dir / "summary.json", report_json(table, report));
  detail::write_text(out_dir / "plot_ec_vs_time.csv", ec_vs_time_csv(table));
  return report;
}

}  // namespace roboenergy
