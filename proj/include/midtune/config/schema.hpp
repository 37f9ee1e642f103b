// midtune/config/schema.hpp

// Copyright 2026  midtune project contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "json.hpp"
#include "midtune/util/errors.hpp"

namespace midtune::config {

// Strict validation: every key of obj must be in allowed; unknown keys are
// rejected by name so typos ("epchs") surface immediately.
void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                const std::string& context);

nlohmann::json load_json_file(const std::filesystem::path& path);

// SHA-256 of the canonical (sorted-key, no-whitespace) serialization.
std::string canonical_digest(const nlohmann::json& j);

template <typename T>
T require(const nlohmann::json& obj, const std::string& key,
          const std::string& context) {
  if (!obj.contains(key)) {
    throw ConfigError("missing key '" + key + "' in " + context);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("bad type for key '" + key + "' in " + context);
  }
}

template <typename T>
T get_or(const nlohmann::json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("bad type for key '" + key + "'");
  }
}

}  // namespace midtune::config
