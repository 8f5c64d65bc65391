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

// Experiment harness: assessment sweeps, strategy runs, scene generation
// and the quiz server.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "roboenergy/assessment.hpp"
#include "roboenergy/error.hpp"
#include "roboenergy/fixtures.hpp"
#include "roboenergy/kinematics.hpp"
#include "roboenergy/model_io.hpp"
#include "roboenergy/power.hpp"
#include "roboenergy/quiz_service.hpp"
#include "roboenergy/report.hpp"
#include "roboenergy/scenes.hpp"
#include "roboenergy/strategies.hpp"

namespace {

using namespace roboenergy;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lab");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* level = std::getenv("LAB_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

Json joints(const JointVector& q) {
  Json out = Json::array();
  for (int i = 0; i < q.size(); ++i) out.push_back(q[i]);
  return out;
}

Json payload_json(const Payload& p) {
  return {{"mass", p.mass}, {"com_offset", {p.com_offset.x(), p.com_offset.y(), p.com_offset.z()}}};
}

Json move_json(const PlannedMove& m) {
  return {{"q_start", joints(m.q_start)},
          {"q_end", joints(m.q_end)},
          {"v_limit", m.v_limit},
          {"a_limit", m.a_limit}};
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

struct OptimizeArgs {
  std::string kind;
  std::string robot;
  std::optional<std::string> fixtures;
  std::optional<double> payload;
  std::uint64_t seed = 42;
  std::optional<double> tcp_tolerance;
  std::string out;
};

Json run_optimize(const OptimizeArgs& a) {
  const RobotModel model = load_robot(a.robot);
  const Fixtures fx =
      load_fixtures(a.fixtures ? std::filesystem::path(*a.fixtures) : fixtures_path_for(model));
  Json doc;
  doc["schema_version"] = 1;
  doc["strategy"] = a.kind;
  doc["robot"] = model.name;
  doc["data_source"] = "simulated";

  if (a.kind == "standby") {
    Payload payload;
    payload.mass = a.payload.value_or(0.0);
    StandbyOptions opt;
    opt.seed = a.seed;
    const StandbyConstraint c = a.tcp_tolerance
                                    ? StandbyConstraint::fixed_tcp_position(*a.tcp_tolerance)
                                    : StandbyConstraint::free();
    const StandbyResult r = optimal_standby(model, payload, fx.reference_standby, c, opt);
    doc["inputs"] = {{"payload", payload_json(payload)},
                     {"q_seed", joints(fx.reference_standby)},
                     {"constraint", a.tcp_tolerance ? "fixed_tcp_position" : "free"},
                     {"tcp_tolerance", a.tcp_tolerance.value_or(0.0)},
                     {"seed", a.seed}};
    doc["result"] = {{"q_star", joints(r.q_star)},
                     {"power_star", r.power_star},
                     {"baseline_power", r.baseline_power},
                     {"saving_fraction", r.saving_fraction},
                     {"starts", r.starts},
                     {"evaluations", r.evaluations}};
  } else if (a.kind == "command") {
    const CommandPairFixture& cp = fx.command_pair;
    std::vector<double> masses = a.payload ? std::vector<double>{*a.payload} : cp.payloads;
    Json results = Json::array();
    for (double m : masses) {
      Payload payload;
      payload.mass = m;
      const CommandComparison r = select_command(model, cp.q_start, cp.q_end, payload, cp.limits);
      Json entry = {{"payload", m},
                    {"e_movej", r.movej_error ? Json(nullptr) : Json(r.e_movej)},
                    {"e_movel", r.movel_error ? Json(nullptr) : Json(r.e_movel)},
                    {"recommended", to_string(r.recommended)},
                    {"saving_fraction", r.saving_fraction}};
      if (r.movej_error) entry["movej_error"] = *r.movej_error;
      if (r.movel_error) entry["movel_error"] = *r.movel_error;
      results.push_back(entry);
    }
    doc["inputs"] = {{"q_start", joints(cp.q_start)},
                     {"q_end", joints(cp.q_end)},
                     {"limits",
                      {{"joint_velocity", cp.limits.joint_velocity},
                       {"joint_acceleration", cp.limits.joint_acceleration},
                       {"linear_velocity", cp.limits.linear_velocity},
                       {"linear_acceleration", cp.limits.linear_acceleration}}}};
    doc["result"] = results;
  } else if (a.kind == "time") {
    PlannedMove move = fx.motion_time.move;
    if (a.payload) move.payload.mass = *a.payload;
    const Trajectory base = plan(model, move);
    const MotionTimeResult r =
        optimal_motion_time(model, base, move.payload, fx.motion_time.k_min, fx.motion_time.k_max);
    Json curve = Json::array();
    for (const CurvePoint& p : r.curve.points) {
      curve.push_back({{"k", p.k}, {"duration", p.duration}, {"e_grid", p.e_grid}});
    }
    Json excluded = Json::array();
    for (const ExcludedPoint& p : r.curve.excluded) {
      excluded.push_back({{"k", p.k}, {"reason", p.reason}});
    }
    doc["inputs"] = {{"move", move_json(move)},
                     {"payload", payload_json(move.payload)},
                     {"k_min", fx.motion_time.k_min},
                     {"k_max", fx.motion_time.k_max}};
    doc["result"] = {{"k_star", r.k_star},
                     {"e_star", r.e_star},
                     {"duration_star", r.duration_star},
                     {"base_duration", r.curve.base_duration},
                     {"curve", curve},
                     {"excluded", excluded}};
  } else {
    PlannedMove move = fx.descent;
    if (a.payload) move.payload.mass = *a.payload;
    const Trajectory base = plan(model, move);
    const SaturationResult r = saturate_power(model, base, move.payload);
    doc["inputs"] = {{"move", move_json(move)}, {"payload", payload_json(move.payload)}};
    doc["result"] = {{"e_grid_before", r.e_grid_before},
                     {"e_grid_after", r.e_grid_after},
                     {"e_dissipated_before", r.e_dissipated_before},
                     {"e_dissipated_after", r.e_dissipated_after},
                     {"duration_before", base.duration()},
                     {"duration_after", r.traj_out.duration()},
                     {"iterations", r.iterations},
                     {"converged", r.converged}};
  }
  return doc;
}

QuizService* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int run(int argc, char** argv) {
  CLI::App app{"Robot energy lab"};
  app.require_subcommand(1);

  // assess
  auto* assess = app.add_subcommand("assess", "Run an assessment sweep");
  std::string config_path;
  std::optional<std::string> assess_out;
  assess->add_option("--config", config_path, "Assessment config (JSON)")->required();
  assess->add_option("--out", assess_out, "Output directory (overrides the config)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Run one energy-reduction strategy");
  OptimizeArgs opt;
  optimize->add_option("strategy", opt.kind, "standby | command | time | saturate")
      ->required()
      ->check(CLI::IsMember({"standby", "command", "time", "saturate"}));
  optimize->add_option("--robot", opt.robot, "Robot parameter file")->required();
  optimize->add_option("--fixtures", opt.fixtures, "Fixture file (default: shipped for the robot)");
  optimize->add_option("--payload", opt.payload, "Payload mass, kg");
  optimize->add_option("--seed", opt.seed, "Random-start seed");
  optimize->add_option("--tcp-tolerance", opt.tcp_tolerance,
                       "standby: keep the tool position within this many metres");
  optimize->add_option("--out", opt.out, "Result document (JSON)")->required();

  // scenes generate
  auto* scenes = app.add_subcommand("scenes", "Quiz scene tools");
  scenes->require_subcommand(1);
  auto* generate = scenes->add_subcommand("generate", "Generate the ten quiz scenes");
  std::vector<std::string> scene_robots;
  std::uint64_t scene_seed = 42;
  std::string scenes_out;
  generate->add_option("--robot", scene_robots, "Robot parameter file (repeatable)");
  generate->add_option("--seed", scene_seed, "Generation seed");
  generate->add_option("--out", scenes_out, "Scenes file")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the quiz over HTTP");
  std::string serve_scenes;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> static_dir;
  std::optional<std::string> sessions_log;
  serve->add_option("--scenes", serve_scenes, "Scenes file")->required();
  serve->add_option("--port", port, "TCP port (0 picks a free one)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--sessions", sessions_log, "Session log (JSON lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*assess) {
    AssessmentConfig config;
    try {
      config = load_assessment_config(config_path);
    } catch (const Error& e) {
      spdlog::error("{}", e.what());
      return kExitConfig;
    }
    const std::filesystem::path out =
        assess_out ? std::filesystem::path(*assess_out) : config.output_dir;
    spdlog::info("sweep: {} configurations x {} payloads x {} commands x {} v_limits x {} "
                 "a_limits x {} profiles = {} points",
                 config.configurations.size(), config.payloads.size(), config.commands.size(),
                 config.v_limits.size(), config.a_limits.size(), config.profiles.size(),
                 config.sweep_size());
    AssessmentTable table;
    try {
      table = run_assessment(config, out);
    } catch (const Error& e) {
      spdlog::error("{}", e.what());
      return e.code() == ErrorCode::kConfig ? kExitConfig : kExitFailure;
    }
    for (const AssessmentRow& r : table.rows) {
      if (!r.feasible) spdlog::warn("point {} infeasible: {}", r.index, r.reason);
    }
    spdlog::info("{} of {} points feasible; results in {}", table.feasible_count(),
                 table.rows.size(), out.string());
    if (table.feasible_count() == 0) {
      spdlog::error("every sweep point is infeasible");
      return kExitInfeasible;
    }
    emit_report(table, out);
    return kExitOk;
  }

  if (*optimize) {
    const Json doc = run_optimize(opt);
    write_json(opt.out, doc);
    spdlog::info("{} result written to {}", opt.kind, opt.out);
    return kExitOk;
  }

  if (*generate) {
    if (scene_robots.empty()) {
      scene_robots = {(data_dir() / "robots" / "ur10e_like.json").string(),
                      (data_dir() / "robots" / "ur3e_like.json").string()};
    }
    std::vector<RobotModel> robots;
    for (const std::string& path : scene_robots) robots.push_back(load_robot(path));
    const std::vector<QuizScene> generated = generate_scenes(robots, scene_seed);
    write_scenes(generated, robots, scene_seed, scenes_out);
    spdlog::info("{} scenes written to {}", generated.size(), scenes_out);
    return kExitOk;
  }

  if (*serve) {
    QuizService::Options options;
    if (sessions_log) options.sessions_log = *sessions_log;
    std::ifstream in(serve_scenes, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + serve_scenes);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    QuizService service(text, options);
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    spdlog::info("serving {} scenes on {}:{}", service.scene_count(), host, port);
    service.serve(host, port,
                  static_dir ? std::optional<std::filesystem::path>(*static_dir) : std::nullopt);
    g_service = nullptr;
    return kExitOk;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  try {
    return run(argc, argv);
  } catch (const roboenergy::Error& e) {
    spdlog::error("{}", e.what());
    return e.code() == roboenergy::ErrorCode::kConfig ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
}
