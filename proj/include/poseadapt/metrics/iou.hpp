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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "poseadapt/core/types.hpp"

namespace poseadapt::metrics {

// Integer intersection/union counters per class. Ignore pixels in the
// reference contribute to nothing. Accumulation is associative and
// commutative, so shards can be merged in any order.
struct ConfusionAccumulator {
  std::array<std::int64_t, kNumClasses> intersections{};
  std::array<std::int64_t, kNumClasses> unions{};
  std::array<std::int64_t, kNumClasses> pixel_counts{};  // reference pixels per class

  void merge(const ConfusionAccumulator& o) {
    for (int c = 0; c < kNumClasses; ++c) {
      intersections[c] += o.intersections[c];
      unions[c] += o.unions[c];
      pixel_counts[c] += o.pixel_counts[c];
    }
  }
};

struct IoUReport {
  std::array<std::optional<double>, kNumClasses> per_class;
  double mean = 0.0;  // arithmetic mean over present classes only
  std::vector<int> present_classes;
};

/// Single-class IoU over non-ignore reference pixels; empty when the union
/// is empty (class absent from both masks).
std::optional<double> iou(const HardMask& pred, const HardMask& ref, int class_id);

/// Per-image mIoU: mean of iou over classes with non-empty union; 0 when no
/// class has a non-empty union (e.g. all-ignore reference).
double miou_image(const HardMask& pred, const HardMask& ref);

/// Adds one image pair to the accumulator. The prediction must not contain
/// ignore pixels (ShapeMismatch names the offender).
void accumulate(ConfusionAccumulator& acc, const HardMask& pred, const HardMask& ref);

/// Per-class IoUs and their mean from accumulated counts.
IoUReport report(const ConfusionAccumulator& acc);

}  // namespace poseadapt::metrics
