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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace roboenergy {

struct HttpResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

// Quiz game over the scenes file. Every payload carries schema_version 1.
// Scene payloads never contain correct_index, option energies or traces;
// those come back only in the answer response. Sessions are kept in an
// append-only JSON-lines log and replayed on construction.
class QuizService {
 public:
  struct Options {
    std::optional<std::filesystem::path> sessions_log;
    std::function<double()> clock;            // seconds; defaults to wall time
    std::function<std::string()> new_id;      // defaults to random hex
  };

  QuizService(const std::string& scenes_json, Options options);
  ~QuizService();

  HttpResponse list_scenes() const;
  HttpResponse get_scene(const std::string& id) const;
  HttpResponse create_session();
  HttpResponse answer(const std::string& session_id, const std::string& body);
  HttpResponse report(const std::string& session_id) const;

  // Routes an /api request; 404 for unknown paths, 405 for wrong methods.
  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::string& body);

  std::size_t scene_count() const { return scenes_.size(); }

  // Blocks serving HTTP until stop(). Static files from static_dir at "/".
  void serve(const std::string& host, int port,
             const std::optional<std::filesystem::path>& static_dir);
  void stop();
  // Port bound by serve(); 0 before it is listening.
  int bound_port() const;

 private:
  struct Scene {
    std::string id;
    nlohmann::ordered_json summary;
    nlohmann::ordered_json detail;
    int correct_index = 0;
    std::vector<double> energies;
    std::string theory;
  };
  struct Answer {
    std::string scene_id;
    int choice = 0;
    bool correct = false;
    double answered_at = 0.0;
  };
  struct Session {
    std::string id;
    double started_at = 0.0;
    std::vector<Answer> answers;
    mutable std::mutex mutex;
  };

  const Scene* find_scene(const std::string& id) const;
  std::shared_ptr<Session> find_session(const std::string& id) const;
  void append_log(const nlohmann::ordered_json& record);
  void replay_log();

  std::vector<Scene> scenes_;
  Options options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex log_mutex_;
  struct Server;
  std::unique_ptr<Server> server_;
};

}  // namespace roboenergy
