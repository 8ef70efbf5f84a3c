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

#include <cstdint>
#include <string>
#include <vector>

#include "poseadapt/core/types.hpp"

namespace poseadapt::pose {

/// Keypoint corruption emulating an imperfect pose estimator: coordinate
/// jitter, dropped joints, and left/right pair swaps. All zero = oracle.
struct PoseCorruption {
  double jitter_std = 0.0;  // normalized units, per axis
  double miss_prob = 0.0;
  double swap_prob = 0.0;   // per left/right joint pair
  std::uint64_t seed = 0;

  void validate() const;
};

/// Preset emulating a pose estimator adapted to the target domain.
PoseCorruption adapted_pose_preset();
/// Preset emulating an unadapted, source-trained pose estimator.
PoseCorruption unadapted_pose_preset();

/// Keypoint source for target images: ground-truth joints keyed by image id,
/// passed through the corruption model. Deterministic in (seed, image id);
/// stateless after construction.
class PoseProvider {
 public:
  PoseProvider(std::vector<KeypointSet> oracle, PoseCorruption corruption);

  /// Reads the keypoints/ subdirectory of a dataset directory.
  static PoseProvider from_directory(const std::string& dataset_dir, PoseCorruption corruption);

  /// Corrupted keypoints for the image with this id; UnknownImage if the id
  /// is not in the oracle table.
  KeypointSet estimate_by_id(int image_id) const;

  /// Convenience overload keyed by the sample's id.
  KeypointSet estimate(const Sample& image) const { return estimate_by_id(image.id); }

  int size() const { return static_cast<int>(oracle_.size()); }
  const PoseCorruption& corruption() const { return corruption_; }

 private:
  std::vector<KeypointSet> oracle_;
  PoseCorruption corruption_;
};

}  // namespace poseadapt::pose
