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
#include <string>
#include <vector>

namespace poseadapt::io {

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
  std::array<std::uint8_t, 3> color{30, 90, 200};
};

/// Minimal line-chart rasterizer (axes, ticks, legend swatches) written
/// straight to an 8-bit PNG. Enough to eyeball training curves.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<PlotSeries>& series, int width = 900, int height = 540);

/// Renders loss curves and the mIoU-versus-epoch chart for a run directory
/// holding a metrics.jsonl; returns the files written.
std::vector<std::string> plot_run(const std::string& run_dir);

}  // namespace poseadapt::io
