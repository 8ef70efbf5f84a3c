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

#include "poseadapt/io/jsonconv.hpp"
#include "poseadapt/priornet/model.hpp"
#include "poseadapt/segnet/model.hpp"

namespace poseadapt::io {

inline constexpr int kCheckpointFormatVersion = 1;

// A checkpoint is a raw little-endian float blob (<path>) plus a sidecar
// metadata record (<path>.json) carrying format_version, model kind and
// shape, epoch, config hash, and the build's git-describe string.

void save_seg_checkpoint(const std::string& path, const seg::SegModel& model, int epoch,
                         const std::string& config_hash);
seg::SegModel load_seg_checkpoint(const std::string& path);

void save_prior_checkpoint(const std::string& path, const prior::PriorModel& model, int epoch,
                           const std::string& config_hash);
prior::PriorModel load_prior_checkpoint(const std::string& path);

/// FNV-1a hash of a canonical JSON dump, as fixed-width hex.
std::string config_hash(const Json& j);

/// git-describe string baked in at build time.
std::string build_version();

}  // namespace poseadapt::io
