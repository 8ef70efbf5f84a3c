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

#include "poseadapt/core/types.hpp"

namespace poseadapt::datagen {

enum class BackgroundMode { kFlat, kTextured };

/// Rendering-domain parameters. The source preset is the identity corruption;
/// target presets shift appearance (image only) and the pose distribution.
struct DomainSpec {
  double blur_sigma = 0.0;                        // pixels
  std::array<double, 3> color_shift{0.0, 0.0, 0.0};  // per channel, [-0.3, 0.3]
  double noise_std = 0.0;                         // [0, 0.2]
  BackgroundMode background_mode = BackgroundMode::kFlat;
  double pose_distribution_shift = 0.0;           // [0, 1], biases joint-angle ranges
  std::array<double, 2> scale_range{0.55, 0.85};  // figure height, fraction of H

  void validate() const;
};

DomainSpec source_preset();
DomainSpec target_preset();

enum LimbId : int {
  kSpineLen = 0,
  kHeadLen,
  kUpperArmL,
  kUpperArmR,
  kForearmL,
  kForearmR,
  kThighL,
  kThighR,
  kShinL,
  kShinR,
  kNumLimbs,
};

enum AngleId : int {
  kSpineTilt = 0,
  kHeadTilt,
  kShoulderL,
  kShoulderR,
  kElbowL,
  kElbowR,
  kHipL,
  kHipR,
  kKneeL,
  kKneeR,
  kNumAngles,
};

struct AngleRange {
  double lo, hi;
  double shift_dir;  // sign/strength of the range-midpoint drift under pose shift
};

/// Anatomical sampling ranges (radians). Knee flexion spans [0, 2.6].
const std::array<AngleRange, kNumAngles>& angle_ranges();

/// Pose and body-shape parameters of one figure, in normalized units.
struct FigureSpec {
  std::array<double, kNumAngles> joint_angles{};
  std::array<double, kNumLimbs> limb_lengths{};  // fractions of H, already scaled
  double torso_width = 0.15;                     // fraction of W (full width)
  double scale = 0.7;                            // figure height, fraction of H
  std::array<double, 2> root_position{0.5, 0.55};  // pelvis, [0,1]^2
};

/// Deterministic figure sampling. Angle ranges are biased by
/// domain.pose_distribution_shift; the root position is placed so the whole
/// figure (including limb thickness) stays inside the unit square.
FigureSpec sample_figure(std::uint64_t rng_seed, const DomainSpec& domain);

/// Joint positions and part geometry in normalized coordinates (y down).
struct Skeleton {
  std::array<double, kNumJoints> jx{}, jy{};
  double pelvis_x = 0, pelvis_y = 0;
  double head_cx = 0, head_cy = 0, head_r = 0;
  double torso_cx = 0, torso_cy = 0;        // ellipse center
  double torso_ux = 0, torso_uy = 0;        // unit axis along the spine
  double torso_a = 0, torso_b = 0;          // semi-axes
  double arm_radius = 0, leg_radius = 0;    // capsule radii
};

/// Throws GeometryError if a limb degenerates to zero length.
Skeleton build_skeleton(const FigureSpec& spec);

}  // namespace poseadapt::datagen
