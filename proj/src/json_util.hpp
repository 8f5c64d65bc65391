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

// Helpers shared by the JSON readers and writers. Not installed.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "roboenergy/error.hpp"
#include "roboenergy/model.hpp"

namespace roboenergy::detail {

using Json = nlohmann::ordered_json;

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

inline Json parse_json(const std::string& text, ErrorCode code = ErrorCode::kParse) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(code, e.what());
  }
}

// Rejects unknown keys and, unless listed in `optional`, missing ones.
inline void require_keys(const Json& obj, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional, const std::string& where,
                         ErrorCode code = ErrorCode::kParse) {
  if (!obj.is_object()) throw Error(code, where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) throw Error(code, where + ": unknown field '" + key + "'");
  }
  for (const char* k : required) {
    if (!obj.contains(k)) throw Error(code, where + ": missing field '" + std::string(k) + "'");
  }
}

inline double get_number(const Json& obj, const char* key, const std::string& where,
                         ErrorCode code = ErrorCode::kParse) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw Error(code, where + "." + key + ": expected a number");
  }
  return obj.at(key).get<double>();
}

inline std::string get_string(const Json& obj, const char* key, const std::string& where,
                              ErrorCode code = ErrorCode::kParse) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(code, where + "." + key + ": expected a string");
  }
  return obj.at(key).get<std::string>();
}

inline JointVector get_joints(const Json& v, const std::string& where,
                              ErrorCode code = ErrorCode::kParse) {
  if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(kMaxDof)) {
    throw Error(code, where + ": expected 1..6 numbers");
  }
  JointVector q(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw Error(code, where + ": expected numbers");
    q[static_cast<int>(i)] = v[i].get<double>();
  }
  return q;
}

inline Json joints_json(const JointVector& q) {
  Json out = Json::array();
  for (int i = 0; i < q.size(); ++i) out.push_back(q[i]);
  return out;
}

inline Json vec3_json(const Eigen::Vector3d& v) { return Json::array({v[0], v[1], v[2]}); }

}  // namespace roboenergy::detail
