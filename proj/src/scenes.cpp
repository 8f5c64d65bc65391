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

#include "roboenergy/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "json_util.hpp"
#include "roboenergy/fixtures.hpp"
#include "roboenergy/kernels.hpp"
#include "roboenergy/kinematics.hpp"
#include "roboenergy/strategies.hpp"
#include "roboenergy/trajectory_io.hpp"

namespace roboenergy {

using detail::Json;

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::kStandby: return "Standby";
    case Technique::kCommandChoice: return "CommandChoice";
    case Technique::kMotionTime: return "MotionTime";
    case Technique::kSaturation: return "Saturation";
  }
  return "?";
}

Technique technique_from_string(std::string_view name) {
  for (Technique t : {Technique::kStandby, Technique::kCommandChoice, Technique::kMotionTime,
                      Technique::kSaturation}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::kParse, "unknown technique '" + std::string(name) + "'");
}

namespace {

std::string_view to_string(OptionRecipe::Kind kind) {
  switch (kind) {
    case OptionRecipe::Kind::kHold: return "hold";
    case OptionRecipe::Kind::kMoveJoint: return "MoveJoint";
    case OptionRecipe::Kind::kMoveLinear: return "MoveLinear";
    case OptionRecipe::Kind::kScaled: return "scaled";
    case OptionRecipe::Kind::kSaturated: return "saturated";
  }
  return "?";
}

const char* kTheory[] = {
    "A robot at rest still draws current to hold its links against gravity. The holding "
    "current follows the gravity torque at each joint and the copper loss grows with the "
    "square of that current. A waiting pose that loads the joints less needs less power "
    "for the same waiting time.",
    "A joint move (MoveJ) interpolates every joint directly, so each joint travels its "
    "shortest angle. A linear move (MoveL) keeps the tool on a straight line, which can "
    "force large and fast joint motions when the wrist has to reorient on the way. More "
    "joint motion means more acceleration torque and more copper loss.",
    "Moving faster shortens the time the controller stays powered, but the larger "
    "accelerations need larger currents and the copper loss grows quickly. Moving slower "
    "keeps the currents low but pays the idle power for longer. The cheapest execution "
    "time lies between the extremes.",
    "When an arm brakes or lowers a load its motors act as generators. Energy the DC bus "
    "cannot reuse is burned in a brake resistor. Slowing down only the regenerating phases "
    "keeps the bus power above zero, so nothing is dissipated and the slower sections also "
    "draw smaller currents.",
};

const char* kTitles[] = {"Waiting pose", "Joint move or linear move", "Execution time",
                         "Braking energy"};

constexpr double kHoldSeconds = 4.0;

struct SceneSpec {
  Technique technique;
  int robot;  // index into the robot list (wrapped)
};

constexpr SceneSpec kPlan[kSceneCount] = {
    {Technique::kStandby, 0},    {Technique::kCommandChoice, 1}, {Technique::kMotionTime, 0},
    {Technique::kSaturation, 0}, {Technique::kStandby, 1},       {Technique::kCommandChoice, 0},
    {Technique::kMotionTime, 0}, {Technique::kSaturation, 0},    {Technique::kStandby, 0},
    {Technique::kCommandChoice, 1},
};

JointVector jitter(const RobotModel& model, const JointVector& q, double amplitude,
                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  JointVector out = q;
  for (int j = 0; j < q.size(); ++j) {
    out[j] = std::clamp(q[j] + u(rng), model.limits[j].q_min, model.limits[j].q_max);
  }
  return out;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string degrees(const JointVector& q) {
  std::string out = "[";
  for (int j = 0; j < q.size(); ++j) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%.0f", j ? ", " : "", q[j] * 180.0 / M_PI);
    out += buf;
  }
  return out + "] deg";
}

std::string seconds(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f s", t);
  return buf;
}

void simulate(const RobotModel& model, const Payload& payload, ProgramOption& option) {
  option.trace = compute_power_trace(model, option.trajectory, payload);
  option.e_grid = integrate_energy(option.trace).e_grid;
}

bool gap_ok(const std::vector<ProgramOption>& options) {
  std::vector<double> e;
  for (const ProgramOption& o : options) e.push_back(o.e_grid);
  std::sort(e.begin(), e.end());
  return e[1] > 0.0 && (e[1] - e[0]) / e[1] >= kMinEnergyGap;
}

std::vector<MotionCommand> joint_command(const OptionRecipe& r) {
  MotionCommand c;
  c.kind = CommandKind::kMoveJoint;
  c.joint_target = r.q_end;
  c.v_limit = r.v_limit;
  c.a_limit = r.a_limit;
  return {c};
}

// One generation attempt; returns false when the options miss the gap or
// cannot be planned.
bool attempt(Technique technique, const RobotModel& model, const Fixtures& fx,
             std::mt19937_64& rng, QuizScene& scene) {
  scene.options.clear();
  switch (technique) {
    case Technique::kStandby: {
      scene.payload = {uniform(rng, 0.0, 2.0), Eigen::Vector3d(0, 0, 0.05)};
      const JointVector ref = jitter(model, fx.reference_standby, 0.35, rng);
      const JointVector other = jitter(model, fx.reference_standby, 0.6, rng);
      const StandbyResult best = optimal_standby(model, scene.payload, ref);
      for (const JointVector* q : {&ref, &other, &best.q_star}) {
        ProgramOption o;
        o.recipe.kind = OptionRecipe::Kind::kHold;
        o.recipe.q_start = *q;
        o.recipe.q_end = *q;
        o.recipe.duration = kHoldSeconds;
        o.description = "Waits " + seconds(kHoldSeconds) + " at " + degrees(*q);
        scene.options.push_back(std::move(o));
      }
      scene.prompt = "Each arm waits for the next part. Which waiting pose uses less energy?";
      break;
    }
    case Technique::kCommandChoice: {
      const CommandPairFixture& cp = fx.command_pair;
      scene.payload = {cp.payloads[std::uniform_int_distribution<std::size_t>(
                           0, cp.payloads.size() - 1)(rng)],
                       Eigen::Vector3d(0, 0, 0.05)};
      const JointVector a = jitter(model, cp.q_start, 0.3, rng);
      const JointVector b = jitter(model, cp.q_end, 0.3, rng);
      ProgramOption j, l;
      j.recipe = {OptionRecipe::Kind::kMoveJoint, a, b, cp.limits.joint_velocity,
                  cp.limits.joint_acceleration, 0.0, 1.0};
      j.description = "MoveJ to the target pose";
      l.recipe = {OptionRecipe::Kind::kMoveLinear, a, b, cp.limits.linear_velocity,
                  cp.limits.linear_acceleration, 0.0, 1.0};
      l.description = "MoveL to the target pose";
      scene.options.push_back(std::move(j));
      scene.options.push_back(std::move(l));
      scene.prompt = "Both arms reach the same target pose. Which command uses less energy?";
      break;
    }
    case Technique::kMotionTime: {
      const MotionTimeFixture& mt = fx.motion_time;
      scene.payload = {uniform(rng, 0.8, 1.2) * mt.move.payload.mass,
                       mt.move.payload.com_offset};
      const JointVector a = jitter(model, mt.move.q_start, 0.1, rng);
      const JointVector b = jitter(model, mt.move.q_end, 0.1, rng);
      const Trajectory base = plan_movej(model, a, b, mt.move.v_limit, mt.move.a_limit);
      MotionTimeOptions opts;
      opts.coarse_points = 17;
      opts.k_tolerance = 1e-3;
      const MotionTimeResult r =
          optimal_motion_time(model, base, scene.payload, mt.k_min, mt.k_max, opts);
      const double fastest = r.curve.points.front().k;
      for (double k : {fastest, r.k_star, std::min(mt.k_max, 1.6 * r.k_star)}) {
        ProgramOption o;
        o.recipe = {OptionRecipe::Kind::kScaled, a, b, mt.move.v_limit, mt.move.a_limit, 0.0, k};
        scene.options.push_back(std::move(o));
      }
      if (r.k_star <= fastest * 1.02) return false;
      scene.prompt = "Both arms follow the same path at different speeds. Which one uses less energy?";
      break;
    }
    case Technique::kSaturation: {
      const PlannedMove& d = fx.descent;
      scene.payload = {uniform(rng, 0.85, 1.15) * d.payload.mass, d.payload.com_offset};
      const JointVector a = jitter(model, d.q_start, 0.1, rng);
      const JointVector b = jitter(model, d.q_end, 0.1, rng);
      ProgramOption o, s;
      o.recipe = {OptionRecipe::Kind::kMoveJoint, a, b, d.v_limit, d.a_limit, 0.0, 1.0};
      s.recipe = {OptionRecipe::Kind::kSaturated, a, b, d.v_limit, d.a_limit, 0.0, 1.0};
      scene.options.push_back(std::move(o));
      scene.options.push_back(std::move(s));
      scene.prompt = "Both arms lower the same load along the same path. Which one uses less energy?";
      break;
    }
  }

  for (ProgramOption& o : scene.options) {
    o.trajectory = build_option_trajectory(model, o.recipe, scene.payload);
    simulate(model, scene.payload, o);
    if (o.recipe.kind != OptionRecipe::Kind::kHold) {
      o.commands = joint_command(o.recipe);
      if (o.recipe.kind == OptionRecipe::Kind::kMoveLinear) {
        o.commands.front().kind = CommandKind::kMoveLinear;
        o.commands.front().pose_target = forward_kinematics(model, o.recipe.q_end);
      }
    }
    if (technique == Technique::kMotionTime || technique == Technique::kSaturation) {
      o.description = "Completes the move in " + seconds(o.trajectory.duration());
    }
  }
  if (technique == Technique::kSaturation && scene.options[1].trajectory.duration() <=
                                                 scene.options[0].trajectory.duration()) {
    return false;  // the saturator had nothing to do
  }
  return gap_ok(scene.options);
}

}  // namespace

Trajectory build_option_trajectory(const RobotModel& model, const OptionRecipe& r,
                                   const Payload& payload) {
  switch (r.kind) {
    case OptionRecipe::Kind::kHold:
      return hold(r.q_start, r.duration);
    case OptionRecipe::Kind::kMoveJoint:
      return plan_movej(model, r.q_start, r.q_end, r.v_limit, r.a_limit);
    case OptionRecipe::Kind::kMoveLinear:
      return plan_movel(model, r.q_start, forward_kinematics(model, r.q_end), r.v_limit,
                        r.a_limit);
    case OptionRecipe::Kind::kScaled:
      return time_scale(model, plan_movej(model, r.q_start, r.q_end, r.v_limit, r.a_limit),
                        r.k);
    case OptionRecipe::Kind::kSaturated:
      return saturate_power(model, plan_movej(model, r.q_start, r.q_end, r.v_limit, r.a_limit),
                            payload)
          .traj_out;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown option recipe");
}

std::vector<QuizScene> generate_scenes(const std::vector<RobotModel>& robots,
                                       std::uint64_t seed) {
  if (robots.empty()) throw Error(ErrorCode::kInvalidArgument, "generate_scenes: no robot");
  std::vector<Fixtures> fixtures;
  for (const RobotModel& m : robots) fixtures.push_back(load_fixtures(fixtures_path_for(m)));

  std::vector<QuizScene> scenes(kSceneCount);
  kernels::omp::for_each_index(kSceneCount, [&](std::size_t i) {
    const SceneSpec& spec = kPlan[i];
    const std::size_t r = static_cast<std::size_t>(spec.robot) % robots.size();
    const RobotModel& model = robots[r];
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    QuizScene& scene = scenes[i];
    char id[16];
    std::snprintf(id, sizeof(id), "scene-%02zu", i + 1);
    scene.id = id;
    scene.technique = spec.technique;
    scene.robot_variant = model.name;
    scene.title = kTitles[static_cast<int>(spec.technique)];
    scene.theory_text = kTheory[static_cast<int>(spec.technique)];

    bool ok = false;
    for (int a = 0; a < kMaxSceneAttempts && !ok; ++a) {
      try {
        ok = attempt(spec.technique, model, fixtures[r], rng, scene);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      throw Error(ErrorCode::kGenerationFailed,
                  scene.id + ": no options with a " + std::to_string(kMinEnergyGap) +
                      " energy gap after " + std::to_string(kMaxSceneAttempts) + " attempts");
    }
    std::shuffle(scene.options.begin(), scene.options.end(), rng);
    for (std::size_t k = 0; k < scene.options.size(); ++k) {
      scene.options[k].label = std::string("Robot ") + static_cast<char>('A' + k);
    }
    const auto best = std::min_element(
        scene.options.begin(), scene.options.end(),
        [](const ProgramOption& x, const ProgramOption& y) { return x.e_grid < y.e_grid; });
    scene.correct_index = static_cast<int>(best - scene.options.begin());
  });
  return scenes;
}

namespace {

double round6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

Json point_json(const Eigen::Vector3d& p) {
  return Json::array({round6(p.x()), round6(p.y()), round6(p.z())});
}

Json recipe_json(const OptionRecipe& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  if (r.kind == OptionRecipe::Kind::kHold) {
    j["q"] = detail::joints_json(r.q_start);
    j["duration"] = r.duration;
    return j;
  }
  j["q_start"] = detail::joints_json(r.q_start);
  j["q_end"] = detail::joints_json(r.q_end);
  j["v_limit"] = r.v_limit;
  j["a_limit"] = r.a_limit;
  if (r.kind == OptionRecipe::Kind::kScaled) j["k"] = r.k;
  return j;
}

Json option_json(const RobotModel& model, const ProgramOption& o) {
  Json j;
  j["label"] = o.label;
  j["description"] = o.description;
  j["recipe"] = recipe_json(o.recipe);
  j["commands"] = Json::parse(program_to_json(o.commands));
  j["e_grid"] = o.e_grid;
  j["duration"] = o.trajectory.duration();

  const Trajectory& t = o.trajectory;
  const std::size_t stride = std::max<std::size_t>(
      1, (t.size() + kMaxPlaybackFrames - 1) / kMaxPlaybackFrames);
  std::vector<std::size_t> frames;
  for (std::size_t i = 0; i < t.size(); i += stride) frames.push_back(i);
  if (frames.back() != t.size() - 1) frames.push_back(t.size() - 1);

  Json times = Json::array(), q = Json::array(), arm = Json::array(), path = Json::array();
  for (std::size_t i : frames) {
    times.push_back(round6(t.samples[i].t - t.front().t));
    Json qi = Json::array();
    for (int k = 0; k < t.samples[i].q.size(); ++k) qi.push_back(round6(t.samples[i].q[k]));
    q.push_back(qi);
    Json stick = Json::array({point_json(Eigen::Vector3d::Zero())});
    for (const auto& f : joint_frames(model, t.samples[i].q)) {
      stick.push_back(point_json(f.translation()));
    }
    path.push_back(stick.back());
    arm.push_back(stick);
  }
  j["trajectory"] = {{"t", times}, {"q", q}};
  j["arm_frames"] = arm;
  j["path_polyline"] = path;

  const PowerTrace& tr = o.trace;
  Json p_bus = Json::array(), p_grid = Json::array(), p_diss = Json::array();
  for (const PowerSample& s : tr.samples) {
    p_bus.push_back(s.p_bus);
    p_grid.push_back(s.p_grid);
    p_diss.push_back(s.p_dissipated);
  }
  Json current = Json::array(), temp = Json::array();
  for (std::size_t i : frames) {
    Json ci = Json::array(), ti = Json::array();
    for (int k = 0; k < tr.samples[i].i_joint.size(); ++k) {
      ci.push_back(round6(tr.samples[i].i_joint[k]));
      ti.push_back(round6(tr.samples[i].temp[k]));
    }
    current.push_back(ci);
    temp.push_back(ti);
  }
  j["trace"] = {{"dt", tr.dt},       {"p_bus", p_bus},     {"p_grid", p_grid},
                {"p_dissipated", p_diss}, {"t", times}, {"current", current},
                {"temperature", temp}};
  return j;
}

}  // namespace

std::string scenes_to_json(const std::vector<QuizScene>& scenes,
                           const std::vector<RobotModel>& robots, std::uint64_t seed) {
  Json root;
  root["schema"] = "scenes-v1";
  root["schema_version"] = 1;
  root["seed"] = seed;
  root["data_source"] = "simulated";
  Json list = Json::array();
  for (const QuizScene& s : scenes) {
    Json j;
    j["id"] = s.id;
    j["technique"] = to_string(s.technique);
    j["robot_variant"] = s.robot_variant;
    j["title"] = s.title;
    j["prompt"] = s.prompt;
    j["theory_text"] = s.theory_text;
    j["data_source"] = "simulated";
    j["payload"] = {{"mass", s.payload.mass}, {"com_offset", detail::vec3_json(s.payload.com_offset)}};
    j["correct_index"] = s.correct_index;
    Json options = Json::array();
    const auto model = std::find_if(robots.begin(), robots.end(), [&](const RobotModel& m) {
      return m.name == s.robot_variant;
    });
    if (model == robots.end()) {
      throw Error(ErrorCode::kInvalidArgument, s.id + ": robot " + s.robot_variant + " not given");
    }
    for (const ProgramOption& o : s.options) options.push_back(option_json(*model, o));
    j["options"] = options;
    list.push_back(j);
  }
  root["scenes"] = list;
  return root.dump() + "\n";
}

void write_scenes(const std::vector<QuizScene>& scenes, const std::vector<RobotModel>& robots,
                  std::uint64_t seed, const std::filesystem::path& path) {
  detail::write_text(path, scenes_to_json(scenes, robots, seed));
}

}  // namespace roboenergy
