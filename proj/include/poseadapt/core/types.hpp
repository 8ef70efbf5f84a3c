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
#include <string>
#include <utility>
#include <vector>

#include "poseadapt/core/errors.hpp"

namespace poseadapt {

/// Fixed seven-part label set. Index 0 is always background.
struct ClassTable {
  std::vector<std::string> names;
  int k = 0;
};

inline const ClassTable& class_table() {
  static const ClassTable t{{"BG", "HD", "TR", "LH", "RH", "LL", "RL"}, 7};
  return t;
}

inline constexpr int kNumClasses = 7;
inline constexpr std::uint8_t kIgnoreLabel = 255;  // fits one byte per pixel

/// RGB image, channel-planar float storage, values in [0,1].
struct Image {
  int h = 0, w = 0;
  std::vector<float> chw;  // [3][h][w]

  Image() = default;
  Image(int h_, int w_) : h(h_), w(w_), chw(std::size_t(3) * h_ * w_, 0.f) {}
  float& at(int c, int y, int x) { return chw[(std::size_t(c) * h + y) * w + x]; }
  float at(int c, int y, int x) const { return chw[(std::size_t(c) * h + y) * w + x]; }
};

/// Per-pixel class probabilities, channel-planar [k][h][w].
struct ProbMap {
  int k = 0, h = 0, w = 0;
  std::vector<float> p;

  ProbMap() = default;
  ProbMap(int k_, int h_, int w_) : k(k_), h(h_), w(w_), p(std::size_t(k_) * h_ * w_, 0.f) {}
  float& at(int cls, int y, int x) { return p[(std::size_t(cls) * h + y) * w + x]; }
  float at(int cls, int y, int x) const { return p[(std::size_t(cls) * h + y) * w + x]; }
  int plane() const { return h * w; }
};

/// Per-pixel class labels; kIgnoreLabel marks pixels excluded from loss and metrics.
struct HardMask {
  int h = 0, w = 0;
  std::vector<std::uint8_t> m;

  HardMask() = default;
  HardMask(int h_, int w_, std::uint8_t fill = 0)
      : h(h_), w(w_), m(std::size_t(h_) * w_, fill) {}
  std::uint8_t& at(int y, int x) { return m[std::size_t(y) * w + x]; }
  std::uint8_t at(int y, int x) const { return m[std::size_t(y) * w + x]; }
  bool operator==(const HardMask& o) const { return h == o.h && w == o.w && m == o.m; }
};

inline constexpr int kNumJoints = 14;

// Fixed joint ordering. The pelvis is not a keypoint; it is the midpoint of
// the two hips.
enum Joint : int {
  kHeadTop = 0,
  kNeck,
  kLShoulder,
  kRShoulder,
  kLElbow,
  kRElbow,
  kLWrist,
  kRWrist,
  kLHip,
  kRHip,
  kLKnee,
  kRKnee,
  kLAnkle,
  kRAnkle,
};

/// Left/right joint pairs, used for mirror augmentation and pose corruption.
inline constexpr std::array<std::pair<Joint, Joint>, 6> kLeftRightPairs{{
    {kLShoulder, kRShoulder},
    {kLElbow, kRElbow},
    {kLWrist, kRWrist},
    {kLHip, kRHip},
    {kLKnee, kRKnee},
    {kLAnkle, kRAnkle},
}};

/// Sparse 2-D joints in normalized [0,1] image coordinates (x right, y down).
struct KeypointSet {
  std::array<float, kNumJoints> x{};
  std::array<float, kNumJoints> y{};
  std::array<bool, kNumJoints> visible{};

  KeypointSet() { visible.fill(false); }
  int num_visible() const {
    int n = 0;
    for (bool v : visible) n += v ? 1 : 0;
    return n;
  }
};

enum class DomainTag { kSource, kTarget };

/// One training/eval example. Source samples carry mask and keypoints;
/// target samples are stripped to the image at adaptation time. `id` is the
/// dataset index used by the pose provider to key its oracle table.
struct Sample {
  Image image;
  std::optional<HardMask> mask;
  std::optional<KeypointSet> keypoints;
  DomainTag domain = DomainTag::kSource;
  int id = -1;
};

struct Batch {
  std::vector<Sample> samples;
  int size() const { return static_cast<int>(samples.size()); }
};

/// Throws NormalizationError naming the worst pixel unless every pixel of
/// `pm` is a probability vector (non-negative, sums to 1 within 1e-5).
void validate_probmap(const ProbMap& pm);

/// Per-pixel argmax; ties break toward the lowest class index.
HardMask argmax_mask(const ProbMap& pm);

/// One-hot encoding of a mask without ignore pixels.
ProbMap one_hot(const HardMask& mask, int k = kNumClasses);

}  // namespace poseadapt
