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

#include <string>

#include "poseadapt/adapt/adapt.hpp"
#include "poseadapt/io/serialize.hpp"

namespace poseadapt::io {

inline constexpr int kConfigSchemaVersion = 1;

struct DataConfig {
  int n_source = 2000;
  int n_target = 2000;
  int n_target_eval = 500;
  int n_source_eval = 500;
  datagen::DomainSpec source_domain = datagen::source_preset();
  datagen::DomainSpec target_domain = datagen::target_preset();
  std::string dir = "data";  // dataset root for the CLI commands
};

struct CheckpointPaths {
  std::string init_checkpoint;   // pretrained source model, input to adapt
  std::string prior_checkpoint;  // trained keypoint prior, input to adapt
};

/// Full experiment configuration. Round-trips losslessly through JSON;
/// unknown keys are rejected. Schedule seeds of 0 mean "derive from the
/// top-level seed".
struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::string run_name = "run";
  std::string out_dir = "runs";
  std::uint64_t seed = 1;
  int resolution = 64;
  DataConfig data;
  prior::PriorTrainConfig prior;
  seg::TrainSchedule pretrain;
  adapt::AdaptConfig adapt;
  CheckpointPaths paths;

  void validate() const;
  bool operator==(const RunConfig& o) const;

  /// CPU-friendly defaults: 15 epochs x 50 iterations at batch 16 with decay
  /// at epochs 5 and 10, and a shortened prior schedule.
  static RunConfig desk_default();
};

Json runconfig_to_json(const RunConfig& cfg);
RunConfig runconfig_from_json(const Json& j);

RunConfig load_runconfig(const std::string& path);
void save_runconfig(const std::string& path, const RunConfig& cfg);

}  // namespace poseadapt::io
