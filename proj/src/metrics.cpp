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

#include "poseadapt/metrics/iou.hpp"

#include <string>

namespace poseadapt::metrics {

namespace {
void check_shapes(const HardMask& pred, const HardMask& ref) {
  if (pred.h != ref.h || pred.w != ref.w)
    throw ShapeMismatch("mask shapes differ: " + std::to_string(pred.h) + "x" +
                        std::to_string(pred.w) + " vs " + std::to_string(ref.h) + "x" +
                        std::to_string(ref.w));
}

ConfusionAccumulator count_pair(const HardMask& pred, const HardMask& ref) {
  ConfusionAccumulator acc;
  const std::size_t n = ref.m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t r = ref.m[i];
    if (r == kIgnoreLabel) continue;
    const std::uint8_t p = pred.m[i];
    acc.pixel_counts[r] += 1;
    if (p == r) {
      acc.intersections[r] += 1;
      acc.unions[r] += 1;
    } else {
      acc.unions[r] += 1;
      if (p < kNumClasses) acc.unions[p] += 1;
    }
  }
  return acc;
}
}  // namespace

std::optional<double> iou(const HardMask& pred, const HardMask& ref, int class_id) {
  check_shapes(pred, ref);
  if (class_id < 0 || class_id >= kNumClasses)
    throw ShapeMismatch("class_id out of range: " + std::to_string(class_id));
  std::int64_t inter = 0, uni = 0;
  const std::size_t n = ref.m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t r = ref.m[i];
    if (r == kIgnoreLabel) continue;
    const bool in_pred = pred.m[i] == class_id;
    const bool in_ref = r == class_id;
    if (in_pred && in_ref) ++inter;
    if (in_pred || in_ref) ++uni;
  }
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double miou_image(const HardMask& pred, const HardMask& ref) {
  check_shapes(pred, ref);
  ConfusionAccumulator acc = count_pair(pred, ref);
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (acc.unions[c] == 0) continue;
    sum += static_cast<double>(acc.intersections[c]) / static_cast<double>(acc.unions[c]);
    ++present;
  }
  return present == 0 ? 0.0 : sum / present;
}

void accumulate(ConfusionAccumulator& acc, const HardMask& pred, const HardMask& ref) {
  check_shapes(pred, ref);
  for (std::size_t i = 0; i < pred.m.size(); ++i)
    if (pred.m[i] >= kNumClasses)
      throw ShapeMismatch("prediction contains a non-class label " +
                          std::to_string(int(pred.m[i])) + " at pixel " + std::to_string(i));
  acc.merge(count_pair(pred, ref));
}

IoUReport report(const ConfusionAccumulator& acc) {
  IoUReport rep;
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (acc.unions[c] == 0) continue;
    const double v =
        static_cast<double>(acc.intersections[c]) / static_cast<double>(acc.unions[c]);
    rep.per_class[c] = v;
    rep.present_classes.push_back(c);
    sum += v;
    ++present;
  }
  rep.mean = present == 0 ? 0.0 : sum / present;
  return rep;
}

}  // namespace poseadapt::metrics
