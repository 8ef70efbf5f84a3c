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
#include "poseadapt/datagen/figure.hpp"

namespace poseadapt {

struct Dataset {
  int resolution = 0;
  std::vector<Sample> samples;
  int size() const { return static_cast<int>(samples.size()); }
};

}  // namespace poseadapt

namespace poseadapt::io {

inline constexpr int kDatasetFormatVersion = 1;

// Directory layout:
//   images/%06d.png     8-bit RGB
//   masks/%06d.png      8-bit single channel, class index per pixel, 255 = ignore
//   keypoints/%06d.json {"coords": [[x,y] x 14], "visible": [bool x 14]}
//   manifest.json       {count, resolution, seed, format_version, domain}
struct Manifest {
  int count = 0;
  int resolution = 0;
  std::uint64_t seed = 0;
  int format_version = kDatasetFormatVersion;
  datagen::DomainSpec domain;
};

/// Generates `n` samples (per-sample figure seed = seed + index) and writes
/// the dataset directory. Returns the manifest it wrote.
Manifest generate_dataset(int n, const datagen::DomainSpec& domain, std::uint64_t seed,
                          const std::string& out_dir, int resolution = 64,
                          DomainTag tag = DomainTag::kSource);

Manifest read_manifest(const std::string& dir);

enum class LoadMode {
  kFull,        // image + mask + keypoints
  kImagesOnly,  // adaptation view of the target domain: labels stripped
};

Dataset load_dataset(const std::string& dir, LoadMode mode = LoadMode::kFull);

/// Ground-truth keypoints in id order (the pose provider's oracle table).
std::vector<KeypointSet> load_keypoint_table(const std::string& dir);

/// In-memory samples -> dataset directory (shared by generate_dataset).
Manifest write_dataset(const std::vector<Sample>& samples, const datagen::DomainSpec& domain,
                       std::uint64_t seed, const std::string& out_dir, int resolution);

/// Lossy float -> 8-bit -> float image quantization used by the on-disk
/// format, exposed so in-memory pipelines see bit-identical pixels.
void quantize_image_inplace(Image& img);

}  // namespace poseadapt::io
