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

namespace poseadapt::io {

struct PngImage {
  int width = 0, height = 0, channels = 0;  // channels: 1 (gray) or 3 (rgb)
  std::vector<std::uint8_t> pixels;         // row-major, interleaved
};

void write_png(const std::string& path, const PngImage& img);
PngImage read_png(const std::string& path);

}  // namespace poseadapt::io
