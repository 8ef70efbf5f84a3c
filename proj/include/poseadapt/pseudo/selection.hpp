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

#include <vector>

#include "poseadapt/core/types.hpp"

namespace poseadapt::pseudo {

/// Confidence thresholds for pseudo-label extraction and the reliable /
/// unreliable batch split. beta >= alpha: unreliable images get the stricter
/// threshold.
struct SelectionConfig {
  double tau = 0.8;
  double gamma = 0.25;
  double alpha = 0.75;
  double beta = 0.85;

  void validate() const;
};

/// Outcome of splitting one batch by per-image agreement score.
struct BatchSplit {
  std::vector<int> reliable_indices;
  std::vector<int> unreliable_indices;
  std::vector<double> scores;
  double lambda = 0.0;  // |reliable| / B, exactly
};

/// Confidence-thresholded pseudo-labels: pixels whose maximal class
/// probability reaches `threshold` get the argmax class; every other pixel
/// is ignored (excluded from any loss), not relabeled.
HardMask extract_pseudo_labels(const ProbMap& pm, double threshold);

/// Per-image agreement scores: mIoU between the prediction argmax and the
/// anatomical-prior pseudo-label.
std::vector<double> score_batch(const std::vector<ProbMap>& preds,
                                const std::vector<HardMask>& priors);

/// Splits indices by score: reliable iff score >= gamma (boundary counts as
/// reliable). The two index sets partition {0..B-1}.
BatchSplit split_batch(const std::vector<double>& scores, double gamma);

}  // namespace poseadapt::pseudo
