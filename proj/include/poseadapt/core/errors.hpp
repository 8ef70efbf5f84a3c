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

#include <stdexcept>
#include <string>

namespace poseadapt {

// Error taxonomy. Each exception maps to one failure kind so the CLI can
// report a single machine-parseable line and exit code.
struct Error : std::runtime_error {
  Error(std::string kind_, const std::string& msg)
      : std::runtime_error(kind_ + ": " + msg), kind(std::move(kind_)) {}
  std::string kind;
};

struct NormalizationError : Error {
  explicit NormalizationError(const std::string& m) : Error("NormalizationError", m) {}
};
struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& m) : Error("ShapeMismatch", m) {}
};
struct GeometryError : Error {
  explicit GeometryError(const std::string& m) : Error("GeometryError", m) {}
};
struct IoError : Error {
  explicit IoError(const std::string& m) : Error("IoError", m) {}
};
struct UnknownImage : Error {
  explicit UnknownImage(const std::string& m) : Error("UnknownImage", m) {}
};
struct EmptyDataset : Error {
  explicit EmptyDataset(const std::string& m) : Error("EmptyDataset", m) {}
};
struct MissingLabels : Error {
  explicit MissingLabels(const std::string& m) : Error("MissingLabels", m) {}
};
struct MissingSourceData : Error {
  explicit MissingSourceData(const std::string& m) : Error("MissingSourceData", m) {}
};
struct InvalidSplit : Error {
  explicit InvalidSplit(const std::string& m) : Error("InvalidSplit", m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("ConfigError", m) {}
};

}  // namespace poseadapt
