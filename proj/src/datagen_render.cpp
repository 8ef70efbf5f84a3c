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

#include "poseadapt/datagen/render.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "poseadapt/core/rng.hpp"

namespace poseadapt::datagen {

namespace {

constexpr int kClassBg = 0, kClassHead = 1, kClassTorso = 2;
constexpr int kClassArmL = 3, kClassArmR = 4, kClassLegL = 5, kClassLegR = 6;

// base palette, one RGB triple per class (BG tint handled separately)
constexpr float kPalette[kNumClasses][3] = {
    {0.80f, 0.80f, 0.83f},  // BG
    {0.87f, 0.67f, 0.50f},  // HD
    {0.70f, 0.18f, 0.18f},  // TR
    {0.15f, 0.62f, 0.25f},  // LH
    {0.17f, 0.35f, 0.80f},  // RH
    {0.82f, 0.78f, 0.18f},  // LL
    {0.75f, 0.22f, 0.72f},  // RL
};

struct Raster {
  int res;
  double px(int i) const { return (i + 0.5) / res; }
};

void fill_circle(HardMask& m, double cx, double cy, double r, std::uint8_t cls) {
  const int res = m.h;
  const int y0 = std::max(0, int(std::floor((cy - r) * res - 0.5)));
  const int y1 = std::min(res - 1, int(std::ceil((cy + r) * res)));
  const int x0 = std::max(0, int(std::floor((cx - r) * res - 0.5)));
  const int x1 = std::min(res - 1, int(std::ceil((cx + r) * res)));
  const double r2 = r * r;
  for (int y = y0; y <= y1; ++y) {
    const double py = (y + 0.5) / res;
    for (int x = x0; x <= x1; ++x) {
      const double pxx = (x + 0.5) / res;
      const double dx = pxx - cx, dy = py - cy;
      if (dx * dx + dy * dy <= r2) m.at(y, x) = cls;
    }
  }
}

void fill_ellipse(HardMask& m, double cx, double cy, double ux, double uy, double a, double b,
                  std::uint8_t cls) {
  const int res = m.h;
  const double rmax = std::max(a, b);
  const int y0 = std::max(0, int(std::floor((cy - rmax) * res - 0.5)));
  const int y1 = std::min(res - 1, int(std::ceil((cy + rmax) * res)));
  const int x0 = std::max(0, int(std::floor((cx - rmax) * res - 0.5)));
  const int x1 = std::min(res - 1, int(std::ceil((cx + rmax) * res)));
  for (int y = y0; y <= y1; ++y) {
    const double py = (y + 0.5) / res;
    for (int x = x0; x <= x1; ++x) {
      const double pxx = (x + 0.5) / res;
      const double dx = pxx - cx, dy = py - cy;
      const double along = dx * ux + dy * uy;
      const double across = -dx * uy + dy * ux;
      if ((along * along) / (a * a) + (across * across) / (b * b) <= 1.0) m.at(y, x) = cls;
    }
  }
}

void fill_capsule(HardMask& m, double x0d, double y0d, double x1d, double y1d, double r,
                  std::uint8_t cls) {
  const int res = m.h;
  const double minx = std::min(x0d, x1d) - r, maxx = std::max(x0d, x1d) + r;
  const double miny = std::min(y0d, y1d) - r, maxy = std::max(y0d, y1d) + r;
  const int ya = std::max(0, int(std::floor(miny * res - 0.5)));
  const int yb = std::min(res - 1, int(std::ceil(maxy * res)));
  const int xa = std::max(0, int(std::floor(minx * res - 0.5)));
  const int xb = std::min(res - 1, int(std::ceil(maxx * res)));
  const double vx = x1d - x0d, vy = y1d - y0d;
  const double len2 = vx * vx + vy * vy;
  const double r2 = r * r;
  for (int y = ya; y <= yb; ++y) {
    const double py = (y + 0.5) / res;
    for (int x = xa; x <= xb; ++x) {
      const double pxx = (x + 0.5) / res;
      double t = len2 > 0.0 ? ((pxx - x0d) * vx + (py - y0d) * vy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = pxx - (x0d + t * vx), dy = py - (y0d + t * vy);
      if (dx * dx + dy * dy <= r2) m.at(y, x) = cls;
    }
  }
}

void gaussian_blur(Image& img, double sigma) {
  if (sigma <= 0.0) return;
  const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
  std::vector<float> kern(2 * radius + 1);
  float norm = 0.f;
  for (int i = -radius; i <= radius; ++i) {
    kern[i + radius] = static_cast<float>(std::exp(-0.5 * (i * i) / (sigma * sigma)));
    norm += kern[i + radius];
  }
  for (auto& k : kern) k /= norm;
  const int h = img.h, w = img.w;
  std::vector<float> tmp(std::size_t(h) * w);
  auto reflect = [](int i, int n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
    return i;
  };
  for (int c = 0; c < 3; ++c) {
    float* plane = img.chw.data() + std::size_t(c) * h * w;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        float acc = 0.f;
        for (int i = -radius; i <= radius; ++i)
          acc += kern[i + radius] * plane[y * w + reflect(x + i, w)];
        tmp[y * w + x] = acc;
      }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        float acc = 0.f;
        for (int i = -radius; i <= radius; ++i)
          acc += kern[i + radius] * tmp[reflect(y + i, h) * w + x];
        plane[y * w + x] = acc;
      }
  }
}

}  // namespace

Sample render(const FigureSpec& spec, const DomainSpec& domain, int resolution,
              std::uint64_t image_seed) {
  if (resolution < 32) throw ConfigError("resolution must be >= 32");
  const Skeleton sk = build_skeleton(spec);

  HardMask mask(resolution, resolution, kClassBg);
  // fixed occlusion order: torso, head, left leg, right leg, left arm, right arm
  fill_ellipse(mask, sk.torso_cx, sk.torso_cy, sk.torso_ux, sk.torso_uy, sk.torso_a, sk.torso_b,
               kClassTorso);
  fill_circle(mask, sk.head_cx, sk.head_cy, sk.head_r, kClassHead);
  fill_capsule(mask, sk.jx[kLHip], sk.jy[kLHip], sk.jx[kLKnee], sk.jy[kLKnee], sk.leg_radius,
               kClassLegL);
  fill_capsule(mask, sk.jx[kLKnee], sk.jy[kLKnee], sk.jx[kLAnkle], sk.jy[kLAnkle], sk.leg_radius,
               kClassLegL);
  fill_capsule(mask, sk.jx[kRHip], sk.jy[kRHip], sk.jx[kRKnee], sk.jy[kRKnee], sk.leg_radius,
               kClassLegR);
  fill_capsule(mask, sk.jx[kRKnee], sk.jy[kRKnee], sk.jx[kRAnkle], sk.jy[kRAnkle], sk.leg_radius,
               kClassLegR);
  fill_capsule(mask, sk.jx[kLShoulder], sk.jy[kLShoulder], sk.jx[kLElbow], sk.jy[kLElbow],
               sk.arm_radius, kClassArmL);
  fill_capsule(mask, sk.jx[kLElbow], sk.jy[kLElbow], sk.jx[kLWrist], sk.jy[kLWrist],
               sk.arm_radius, kClassArmL);
  fill_capsule(mask, sk.jx[kRShoulder], sk.jy[kRShoulder], sk.jx[kRElbow], sk.jy[kRElbow],
               sk.arm_radius, kClassArmR);
  fill_capsule(mask, sk.jx[kRElbow], sk.jy[kRElbow], sk.jx[kRWrist], sk.jy[kRWrist],
               sk.arm_radius, kClassArmR);

  // image-only randomness
  std::mt19937_64 rng(mix_seed(image_seed, stream_tag("image")));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  float palette[kNumClasses][3];
  for (int c = 0; c < kNumClasses; ++c)
    for (int ch = 0; ch < 3; ++ch)
      palette[c][ch] = kPalette[c][ch] + static_cast<float>(0.08 * (uni(rng) - 0.5));

  // background parameters are always drawn to keep the stream layout fixed
  double f1x = 1.5 + 3.5 * uni(rng), f1y = 1.5 + 3.5 * uni(rng), ph1 = 6.2831853 * uni(rng);
  double f2x = 1.5 + 3.5 * uni(rng), f2y = 1.5 + 3.5 * uni(rng), ph2 = 6.2831853 * uni(rng);
  double amp1 = 0.05 + 0.07 * uni(rng), amp2 = 0.04 + 0.05 * uni(rng);

  Image img(resolution, resolution);
  for (int y = 0; y < resolution; ++y) {
    const double py = (y + 0.5) / resolution;
    for (int x = 0; x < resolution; ++x) {
      const double px = (x + 0.5) / resolution;
      const std::uint8_t cls = mask.at(y, x);
      float tex = 0.f;
      if (cls == kClassBg && domain.background_mode == BackgroundMode::kTextured)
        tex = static_cast<float>(amp1 * std::sin(6.2831853 * (f1x * px + f1y * py) + ph1) +
                                 amp2 * std::sin(6.2831853 * (f2x * px - f2y * py) + ph2));
      for (int ch = 0; ch < 3; ++ch) img.at(ch, y, x) = palette[cls][ch] + tex;
    }
  }

  for (int ch = 0; ch < 3; ++ch) {
    const float shift = static_cast<float>(domain.color_shift[ch]);
    if (shift == 0.f) continue;
    float* plane = img.chw.data() + std::size_t(ch) * resolution * resolution;
    for (int i = 0; i < resolution * resolution; ++i) plane[i] += shift;
  }
  gaussian_blur(img, domain.blur_sigma);
  if (domain.noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, domain.noise_std);
    for (auto& v : img.chw) v += static_cast<float>(noise(rng));
  }
  for (auto& v : img.chw) v = std::clamp(v, 0.f, 1.f);

  KeypointSet kp;
  for (int j = 0; j < kNumJoints; ++j) {
    kp.x[j] = static_cast<float>(sk.jx[j]);
    kp.y[j] = static_cast<float>(sk.jy[j]);
    kp.visible[j] = true;
  }

  Sample s;
  s.image = std::move(img);
  s.mask = std::move(mask);
  s.keypoints = kp;
  return s;
}

bool joints_consistent(const Sample& s, double tol_px) {
  if (!s.mask || !s.keypoints) return false;
  const HardMask& m = *s.mask;
  const KeypointSet& kp = *s.keypoints;
  const int res = m.h;
  // owning class per joint; shoulder/elbow/wrist pixels belong to the arm,
  // hip/knee/ankle to the leg, head-top to the head, neck to the torso
  static constexpr std::uint8_t owner[kNumJoints] = {
      kClassHead, kClassTorso, kClassArmL, kClassArmR, kClassArmL, kClassArmR, kClassArmL,
      kClassArmR, kClassLegL, kClassLegR, kClassLegL, kClassLegR, kClassLegL, kClassLegR};
  const int reach = static_cast<int>(std::ceil(tol_px));
  for (int j = 0; j < kNumJoints; ++j) {
    if (!kp.visible[j]) continue;
    const int cx = std::clamp(int(kp.x[j] * res), 0, res - 1);
    const int cy = std::clamp(int(kp.y[j] * res), 0, res - 1);
    bool ok = false;
    for (int dy = -reach; dy <= reach && !ok; ++dy) {
      for (int dx = -reach; dx <= reach && !ok; ++dx) {
        if (dx * dx + dy * dy > tol_px * tol_px) continue;
        const int x = cx + dx, y = cy + dy;
        if (x < 0 || x >= res || y < 0 || y >= res) continue;
        if (m.at(y, x) == owner[j]) ok = true;
      }
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<Sample> generate_samples(int n, const DomainSpec& domain, std::uint64_t seed,
                                     int resolution, DomainTag tag) {
  if (n < 1) throw ConfigError("dataset size must be >= 1");
  domain.validate();
  std::vector<Sample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t base = seed + static_cast<std::uint64_t>(i);
    Sample s;
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t fig_seed =
          attempt == 0 ? base : mix_seed(base, stream_tag("retry") + attempt);
      const FigureSpec spec = sample_figure(fig_seed, domain);
      s = render(spec, domain, resolution, mix_seed(base, stream_tag("img")));
      if (joints_consistent(s)) break;
      if (attempt >= 64)
        throw GeometryError("sample " + std::to_string(i) +
                            ": no joint-consistent figure after 64 attempts");
    }
    s.domain = tag;
    s.id = i;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace poseadapt::datagen
