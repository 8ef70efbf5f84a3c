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

#include "poseadapt/poseprov/provider.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "poseadapt/core/rng.hpp"
#include "poseadapt/io/dataset.hpp"

namespace poseadapt::pose {

void PoseCorruption::validate() const {
  if (jitter_std < 0.0) throw ConfigError("jitter_std must be >= 0");
  if (miss_prob < 0.0 || miss_prob > 1.0) throw ConfigError("miss_prob must lie in [0,1]");
  if (swap_prob < 0.0 || swap_prob > 1.0) throw ConfigError("swap_prob must lie in [0,1]");
}

PoseCorruption adapted_pose_preset() { return {0.01, 0.02, 0.0, 0}; }
PoseCorruption unadapted_pose_preset() { return {0.06, 0.15, 0.05, 0}; }

PoseProvider::PoseProvider(std::vector<KeypointSet> oracle, PoseCorruption corruption)
    : oracle_(std::move(oracle)), corruption_(corruption) {
  corruption_.validate();
}

PoseProvider PoseProvider::from_directory(const std::string& dataset_dir,
                                          PoseCorruption corruption) {
  return PoseProvider(io::load_keypoint_table(dataset_dir), corruption);
}

KeypointSet PoseProvider::estimate_by_id(int image_id) const {
  if (image_id < 0 || image_id >= static_cast<int>(oracle_.size()))
    throw UnknownImage("no oracle keypoints for image id " + std::to_string(image_id));
  KeypointSet kp = oracle_[image_id];

  std::mt19937_64 rng(mix_seed(corruption_.seed, stream_tag("pose") + image_id));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> jit(0.0, 1.0);

  // Fixed draw order regardless of parameter values: swaps, jitter, misses.
  for (const auto& [l, r] : kLeftRightPairs) {
    const bool swap = uni(rng) < corruption_.swap_prob;
    if (swap) {
      std::swap(kp.x[l], kp.x[r]);
      std::swap(kp.y[l], kp.y[r]);
      std::swap(kp.visible[l], kp.visible[r]);
    }
  }
  for (int j = 0; j < kNumJoints; ++j) {
    const double dx = jit(rng), dy = jit(rng);
    kp.x[j] += static_cast<float>(dx * corruption_.jitter_std);
    kp.y[j] += static_cast<float>(dy * corruption_.jitter_std);
  }
  for (int j = 0; j < kNumJoints; ++j) {
    const bool miss = uni(rng) < corruption_.miss_prob;
    if (miss) kp.visible[j] = false;
  }
  for (int j = 0; j < kNumJoints; ++j) {
    if (!kp.visible[j]) continue;
    kp.x[j] = std::clamp(kp.x[j], 0.f, 1.f);
    kp.y[j] = std::clamp(kp.y[j], 0.f, 1.f);
  }
  return kp;
}

}  // namespace poseadapt::pose
