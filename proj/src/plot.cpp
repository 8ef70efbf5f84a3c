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

#include "poseadapt/io/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "poseadapt/core/errors.hpp"
#include "poseadapt/io/jsonconv.hpp"
#include "poseadapt/io/png_io.hpp"
#include "poseadapt/io/rundir.hpp"

namespace fs = std::filesystem;

namespace poseadapt::io {

namespace {

// 3x5 bitmap digits/characters for tick labels
constexpr const char* kGlyphs = "0123456789.-e";
constexpr std::uint16_t kGlyphRows[13][5] = {
    {0b111, 0b101, 0b101, 0b101, 0b111}, {0b010, 0b110, 0b010, 0b010, 0b111},
    {0b111, 0b001, 0b111, 0b100, 0b111}, {0b111, 0b001, 0b111, 0b001, 0b111},
    {0b101, 0b101, 0b111, 0b001, 0b001}, {0b111, 0b100, 0b111, 0b001, 0b111},
    {0b111, 0b100, 0b111, 0b101, 0b111}, {0b111, 0b001, 0b010, 0b010, 0b010},
    {0b111, 0b101, 0b111, 0b101, 0b111}, {0b111, 0b101, 0b111, 0b001, 0b111},
    {0b000, 0b000, 0b000, 0b000, 0b010}, {0b000, 0b000, 0b111, 0b000, 0b000},
    {0b011, 0b101, 0b111, 0b100, 0b011}};

struct Canvas {
  int w, h;
  std::vector<std::uint8_t> px;  // rgb interleaved
  Canvas(int w_, int h_) : w(w_), h(h_), px(std::size_t(w_) * h_ * 3, 255) {}
  void set(int x, int y, std::array<std::uint8_t, 3> c) {
    if (x < 0 || x >= w || y < 0 || y >= h) return;
    auto* p = &px[(std::size_t(y) * w + x) * 3];
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }
  void line(double x0, double y0, double x1, double y1, std::array<std::uint8_t, 3> c) {
    const double dx = x1 - x0, dy = y1 - y0;
    const int steps = std::max(1, int(std::ceil(std::max(std::fabs(dx), std::fabs(dy)))));
    for (int i = 0; i <= steps; ++i) {
      const double t = double(i) / steps;
      const int x = int(std::lround(x0 + t * dx)), y = int(std::lround(y0 + t * dy));
      set(x, y, c);
      set(x + 1, y, c);  // 2px strokes read better at this size
    }
  }
  void text(int x, int y, const std::string& s, std::array<std::uint8_t, 3> c) {
    for (char ch : s) {
      const char* pos = std::strchr(kGlyphs, ch);
      if (pos) {
        const int g = int(pos - kGlyphs);
        for (int r = 0; r < 5; ++r)
          for (int b = 0; b < 3; ++b)
            if (kGlyphRows[g][r] & (1 << (2 - b))) set(x + b, y + r, c);
      }
      x += 4;
    }
  }
};

std::string fmt_tick(double v) {
  char buf[32];
  if (v != 0 && (std::fabs(v) < 1e-2 || std::fabs(v) >= 1e4))
    std::snprintf(buf, sizeof(buf), "%.1e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<PlotSeries>& series, int width, int height) {
  Canvas cv(width, height);
  const int ml = 70, mr = 20, mt = 30, mb = 40;
  const int pw = width - ml - mr, ph = height - mt - mb;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  ymin -= 0.05 * (ymax - ymin);
  ymax += 0.05 * (ymax - ymin);

  const std::array<std::uint8_t, 3> axis{60, 60, 60}, grid{225, 225, 225};
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  for (int i = 0; i <= 5; ++i) {
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    cv.line(ml, sy(fy), ml + pw, sy(fy), grid);
    cv.text(8, int(sy(fy)) - 2, fmt_tick(fy), axis);
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    cv.line(sx(fx), mt, sx(fx), mt + ph, grid);
    cv.text(int(sx(fx)) - 6, mt + ph + 8, fmt_tick(fx), axis);
  }
  cv.line(ml, mt, ml, mt + ph, axis);
  cv.line(ml, mt + ph, ml + pw, mt + ph, axis);
  cv.text(ml, 10, title, axis);

  int legend_y = mt + 6;
  for (const auto& s : series) {
    for (std::size_t i = 1; i < s.x.size(); ++i)
      cv.line(sx(s.x[i - 1]), sy(s.y[i - 1]), sx(s.x[i]), sy(s.y[i]), s.color);
    cv.line(ml + pw - 60, legend_y, ml + pw - 45, legend_y, s.color);
    cv.text(ml + pw - 40, legend_y - 2, s.name, axis);
    legend_y += 12;
  }

  PngImage out;
  out.width = width;
  out.height = height;
  out.channels = 3;
  out.pixels = std::move(cv.px);
  write_png(path, out);
}

std::vector<std::string> plot_run(const std::string& run_dir) {
  const std::string metrics_path = RunDirectory::metrics_path_of(run_dir);
  std::ifstream in(metrics_path);
  if (!in) throw IoError("no metrics log at " + metrics_path);

  std::vector<double> epochs;
  std::vector<std::pair<std::string, std::vector<double>>> loss_series = {
      {"loss_s", {}}, {"loss_pl", {}}, {"loss_p2s", {}}, {"loss_rpl", {}}, {"loss_total", {}},
      {"loss", {}}};
  std::vector<double> miou;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw IoError(metrics_path + ": bad record: " + e.what());
    }
    if (!j.contains("epoch")) continue;
    epochs.push_back(j["epoch"].get<double>());
    for (auto& [key, values] : loss_series)
      values.push_back(j.contains(key) ? j[key].get<double>() : std::nan(""));
    miou.push_back(j.contains("target_miou") ? j["target_miou"].get<double>() : std::nan(""));
  }
  if (epochs.empty()) throw IoError(metrics_path + ": no epoch records to plot");

  const std::array<std::array<std::uint8_t, 3>, 6> palette{{{200, 60, 60},
                                                            {60, 140, 60},
                                                            {60, 90, 200},
                                                            {200, 140, 40},
                                                            {40, 40, 40},
                                                            {140, 60, 180}}};
  std::vector<PlotSeries> losses;
  int ci = 0;
  for (auto& [key, values] : loss_series) {
    PlotSeries s;
    s.name = key;
    s.color = palette[ci++ % palette.size()];
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (std::isnan(values[i])) continue;
      s.x.push_back(epochs[i]);
      s.y.push_back(values[i]);
    }
    if (!s.x.empty()) losses.push_back(std::move(s));
  }

  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(fs::path(run_dir) / "plots", ec);
  if (!losses.empty()) {
    const std::string p = (fs::path(run_dir) / "plots" / "loss_curves.png").string();
    write_line_chart(p, "loss vs epoch", losses);
    written.push_back(p);
  }
  PlotSeries ms;
  ms.name = "miou";
  ms.color = {60, 90, 200};
  for (std::size_t i = 0; i < miou.size(); ++i) {
    if (std::isnan(miou[i])) continue;
    ms.x.push_back(epochs[i]);
    ms.y.push_back(miou[i]);
  }
  if (!ms.x.empty()) {
    const std::string p = (fs::path(run_dir) / "plots" / "miou_vs_epoch.png").string();
    write_line_chart(p, "target miou vs epoch", {ms});
    written.push_back(p);
  }
  if (written.empty()) throw IoError(metrics_path + ": records carry no plottable fields");
  return written;
}

}  // namespace poseadapt::io
