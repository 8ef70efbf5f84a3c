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
#include <vector>

#include "poseadapt/datagen/figure.hpp"

namespace poseadapt::datagen {

/// Rasterizes one figure: exact part mask (head circle, torso ellipse, limb
/// capsules; fixed draw order torso, head, left leg, right leg, left arm,
/// right arm — later parts occlude earlier ones), the 14 joints, and the RGB
/// image. Image corruptions (color shift, blur, noise, background texture)
/// never touch the mask or keypoints. `image_seed` drives the image-only
/// randomness (noise, texture phases, palette jitter).
Sample render(const FigureSpec& spec, const DomainSpec& domain, int resolution,
              std::uint64_t image_seed = 0);

/// Deterministic in-memory dataset: sample i uses figure seed `seed + i`.
/// Each sample is re-drawn (with a derived seed) until every joint lies on or
/// within 2 pixels of its own part's mask region.
std::vector<Sample> generate_samples(int n, const DomainSpec& domain, std::uint64_t seed,
                                     int resolution, DomainTag tag);

/// True if every visible joint is inside, or within `tol_px` pixels of, its
/// owning part's mask region.
bool joints_consistent(const Sample& s, double tol_px = 2.0);

}  // namespace poseadapt::datagen
