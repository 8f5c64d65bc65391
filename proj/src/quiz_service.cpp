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

#include "roboenergy/quiz_service.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "json_util.hpp"

// After Eigen: resolv.h defines _res.
#include <httplib.h>

namespace roboenergy {

using detail::Json;

namespace {

constexpr int kSchemaVersion = 1;

HttpResponse ok(int status, Json body) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  for (auto& [k, v] : body.items()) out[k] = v;
  return {status, out};
}

HttpResponse fail(int status, const std::string& code, const std::string& message) {
  return {status, {{"schema_version", kSchemaVersion},
                   {"error", {{"code", code}, {"message", message}}}}};
}

double wall_clock() {
  return std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::function<std::string()> random_ids() {
  auto rng = std::make_shared<std::mt19937_64>(std::random_device{}());
  auto mutex = std::make_shared<std::mutex>();
  return [rng, mutex] {
    std::lock_guard lock(*mutex);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>((*rng)()));
    return std::string(buf);
  };
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

}  // namespace

struct QuizService::Server {
  httplib::Server http;
  std::atomic<int> port{0};
};

QuizService::QuizService(const std::string& scenes_json, Options options)
    : options_(std::move(options)) {
  if (!options_.clock) options_.clock = wall_clock;
  if (!options_.new_id) options_.new_id = random_ids();

  const Json root = detail::parse_json(scenes_json);
  if (!root.contains("scenes") || !root.at("scenes").is_array()) {
    throw Error(ErrorCode::kParse, "scenes file: missing scenes array");
  }
  for (const Json& s : root.at("scenes")) try {
    Scene scene;
    scene.id = detail::get_string(s, "id", "scene");
    scene.theory = detail::get_string(s, "theory_text", "scene");
    scene.correct_index = s.at("correct_index").get<int>();
    const Json& options = s.at("options");
    if (!options.is_array() || options.size() < 2 || options.size() > 3) {
      throw Error(ErrorCode::kParse, scene.id + ": expected 2 or 3 options");
    }
    Json labels = Json::array();
    Json public_options = Json::array();
    for (const Json& o : options) {
      scene.energies.push_back(o.at("e_grid").get<double>());
      labels.push_back({{"label", o.at("label")}});
      public_options.push_back({{"label", o.at("label")},
                                {"description", o.at("description")},
                                {"commands", o.at("commands")},
                                {"duration", o.at("duration")},
                                {"trajectory", o.at("trajectory")},
                                {"arm_frames", o.at("arm_frames")},
                                {"path_polyline", o.at("path_polyline")}});
    }
    if (scene.correct_index < 0 || scene.correct_index >= static_cast<int>(options.size())) {
      throw Error(ErrorCode::kParse, scene.id + ": correct_index out of range");
    }
    scene.summary = {{"id", scene.id},
                     {"technique", s.at("technique")},
                     {"robot_variant", s.at("robot_variant")},
                     {"title", s.at("title")},
                     {"prompt", s.at("prompt")},
                     {"option_count", options.size()},
                     {"options", labels}};
    scene.detail = {{"id", scene.id},
                    {"technique", s.at("technique")},
                    {"robot_variant", s.at("robot_variant")},
                    {"title", s.at("title")},
                    {"prompt", s.at("prompt")},
                    {"data_source", s.at("data_source")},
                    {"payload", s.at("payload")},
                    {"options", public_options}};
    scenes_.push_back(std::move(scene));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("scenes file: ") + e.what());
  }
  replay_log();
  server_ = std::make_unique<Server>();
}

QuizService::~QuizService() = default;

const QuizService::Scene* QuizService::find_scene(const std::string& id) const {
  for (const Scene& s : scenes_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::shared_ptr<QuizService::Session> QuizService::find_session(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void QuizService::append_log(const Json& record) {
  if (!options_.sessions_log) return;
  std::lock_guard lock(log_mutex_);
  const std::filesystem::path& log = *options_.sessions_log;
  std::error_code ec;
  if (log.has_parent_path()) std::filesystem::create_directories(log.parent_path(), ec);
  std::ofstream out(log, std::ios::app | std::ios::binary);
  out << record.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + options_.sessions_log->string());
}

void QuizService::replay_log() {
  if (!options_.sessions_log || !std::filesystem::exists(*options_.sessions_log)) return;
  std::ifstream in(*options_.sessions_log, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json r;
    try {
      r = Json::parse(line);
    } catch (const nlohmann::json::exception&) {
      continue;  // torn final write
    }
    const std::string type = r.value("type", "");
    if (type == "session") {
      auto s = std::make_shared<Session>();
      s->id = r.at("id").get<std::string>();
      s->started_at = r.at("started_at").get<double>();
      sessions_[s->id] = s;
    } else if (type == "answer") {
      const auto it = sessions_.find(r.at("session").get<std::string>());
      if (it == sessions_.end()) continue;
      it->second->answers.push_back({r.at("scene_id").get<std::string>(),
                                     r.at("choice").get<int>(), r.at("correct").get<bool>(),
                                     r.at("answered_at").get<double>()});
    }
  }
  // Terminate a torn last line so the next record starts on its own line.
  in.clear();
  in.seekg(0, std::ios::end);
  if (in.tellg() > 0) {
    in.seekg(-1, std::ios::end);
    if (in.get() != '\n') {
      std::ofstream(*options_.sessions_log, std::ios::app | std::ios::binary) << '\n';
    }
  }
}

HttpResponse QuizService::list_scenes() const {
  Json list = Json::array();
  for (const Scene& s : scenes_) list.push_back(s.summary);
  return ok(200, {{"scenes", list}});
}

HttpResponse QuizService::get_scene(const std::string& id) const {
  const Scene* s = find_scene(id);
  if (s == nullptr) return fail(404, "unknown_scene", "no scene '" + id + "'");
  return ok(200, {{"scene", s->detail}});
}

HttpResponse QuizService::create_session() {
  auto s = std::make_shared<Session>();
  s->started_at = options_.clock();
  {
    std::unique_lock lock(sessions_mutex_);
    do {
      s->id = options_.new_id();
    } while (sessions_.count(s->id) != 0);
    append_log({{"type", "session"}, {"id", s->id}, {"started_at", s->started_at}});
    sessions_[s->id] = s;
  }
  return ok(201, {{"session", {{"id", s->id}, {"started_at", s->started_at}}}});
}

HttpResponse QuizService::answer(const std::string& session_id, const std::string& body) {
  const std::shared_ptr<Session> session = find_session(session_id);
  if (!session) return fail(404, "unknown_session", "no session '" + session_id + "'");

  Json req;
  try {
    req = Json::parse(body);
  } catch (const nlohmann::json::exception&) {
    return fail(400, "bad_request", "body must be JSON");
  }
  if (!req.is_object() || !req.contains("scene_id") || !req.at("scene_id").is_string() ||
      !req.contains("choice") || !req.at("choice").is_number_integer()) {
    return fail(400, "bad_request", "body must be {scene_id: string, choice: integer}");
  }
  const std::string scene_id = req.at("scene_id").get<std::string>();
  const Scene* scene = find_scene(scene_id);
  if (scene == nullptr) return fail(404, "unknown_scene", "no scene '" + scene_id + "'");
  const auto choice = req.at("choice").get<long long>();
  if (choice < 0 || choice >= static_cast<long long>(scene->energies.size())) {
    return fail(400, "choice_out_of_range", "choice must index one of the options");
  }

  std::lock_guard lock(session->mutex);
  for (const Answer& a : session->answers) {
    if (a.scene_id == scene_id) {
      return fail(409, "already_answered", "scene '" + scene_id + "' was already answered");
    }
  }
  Answer a{scene_id, static_cast<int>(choice), choice == scene->correct_index,
           options_.clock()};
  append_log({{"type", "answer"},
              {"session", session->id},
              {"scene_id", a.scene_id},
              {"choice", a.choice},
              {"correct", a.correct},
              {"answered_at", a.answered_at}});
  session->answers.push_back(a);
  return ok(200, {{"scene_id", scene_id},
                  {"choice", a.choice},
                  {"correct", a.correct},
                  {"correct_index", scene->correct_index},
                  {"energies", scene->energies},
                  {"explanation", scene->theory}});
}

HttpResponse QuizService::report(const std::string& session_id) const {
  const std::shared_ptr<Session> session = find_session(session_id);
  if (!session) return fail(404, "unknown_session", "no session '" + session_id + "'");
  std::lock_guard lock(session->mutex);
  std::size_t correct = 0;
  double last = session->started_at;
  Json answers = Json::array();
  for (const Answer& a : session->answers) {
    correct += a.correct ? 1 : 0;
    last = std::max(last, a.answered_at);
    answers.push_back({{"scene_id", a.scene_id}, {"choice", a.choice}, {"correct", a.correct}});
  }
  const std::size_t answered = session->answers.size();
  return ok(200, {{"session_id", session->id},
                  {"answered", answered},
                  {"correct", correct},
                  {"success_rate", answered == 0 ? 0.0
                                                 : static_cast<double>(correct) /
                                                       static_cast<double>(answered)},
                  {"elapsed_seconds", last - session->started_at},
                  {"finished", answered == scenes_.size()},
                  {"answers", answers}});
}

HttpResponse QuizService::handle(const std::string& method, const std::string& path,
                                 const std::string& body) {
  const std::vector<std::string> p = split_path(path);
  const auto wrong_method = [] { return fail(405, "method_not_allowed", "method not allowed"); };
  if (p.size() >= 2 && p[0] == "api" && p[1] == "scenes") {
    if (method != "GET") return wrong_method();
    if (p.size() == 2) return list_scenes();
    if (p.size() == 3) return get_scene(p[2]);
  }
  if (p.size() >= 2 && p[0] == "api" && p[1] == "sessions") {
    if (p.size() == 2) return method == "POST" ? create_session() : wrong_method();
    if (p.size() == 4 && p[3] == "answers") {
      return method == "POST" ? answer(p[2], body) : wrong_method();
    }
    if (p.size() == 4 && p[3] == "report") {
      return method == "GET" ? report(p[2]) : wrong_method();
    }
  }
  return fail(404, "not_found", "no route for " + path);
}

void QuizService::serve(const std::string& host, int port,
                        const std::optional<std::filesystem::path>& static_dir) {
  httplib::Server& http = server_->http;
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  http.Get(R"(/api/.*)", route);
  http.Post(R"(/api/.*)", route);
  if (static_dir && !http.set_mount_point("/", static_dir->string())) {
    throw Error(ErrorCode::kIo, "static directory not found: " + static_dir->string());
  }
  const int bound = port == 0 ? http.bind_to_any_port(host) : (http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  server_->port = bound;
  http.listen_after_bind();
}

void QuizService::stop() { server_->http.stop(); }

int QuizService::bound_port() const { return server_->port.load(); }

}  // namespace roboenergy
