// Copyright 2026 The poseadapt Authors
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

#include <json.hpp>
#include <set>
#include <string>

#include "poseadapt/core/errors.hpp"

namespace poseadapt::io {

using Json = nlohmann::json;

// Strict object reader: every key must be consumed, unknown keys are
// configuration errors (catches typos that would silently fall back to
// defaults).
class StrictObject {
 public:
  StrictObject(const Json& j, std::string ctx) : j_(j), ctx_(std::move(ctx)) {
    if (!j_.is_object()) throw ConfigError(ctx_ + ": expected an object");
  }

  template <typename T>
  void require(const char* key, T& out) {
    auto it = j_.find(key);
    if (it == j_.end()) throw ConfigError(ctx_ + ": missing required key '" + key + "'");
    read(*it, key, out);
  }

  template <typename T>
  void optional(const char* key, T& out) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    read(*it, key, out);
  }

  const Json* optional_object(const char* key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError(ctx_ + ": unknown key '" + it.key() + "'");
  }

 private:
  template <typename T>
  void read(const Json& v, const char* key, T& out) {
    try {
      out = v.get<T>();
    } catch (const Json::exception& e) {
      throw ConfigError(ctx_ + "." + key + ": " + e.what());
    }
    seen_.insert(key);
  }

  const Json& j_;
  std::string ctx_;
  std::set<std::string> seen_;
};

}  // namespace poseadapt::io
