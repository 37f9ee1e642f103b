// midtune/util/errors.hpp

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

#include <stdexcept>
#include <string>

namespace midtune {

// Exit-code contract: 0 success, 2 config/usage/data error, 3 training
// divergence, 4 partial grid failure.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg)
      : std::runtime_error("config error: " + msg) {}
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg)
      : std::runtime_error("usage error: " + msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg)
      : std::runtime_error("data error: " + msg) {}
};

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg)
      : std::runtime_error("shape error: " + msg) {}
};

struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& msg)
      : std::runtime_error("training diverged: " + msg) {}
};

}  // namespace midtune
