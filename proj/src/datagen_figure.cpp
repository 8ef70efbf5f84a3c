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

#include "poseadapt/datagen/figure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "poseadapt/core/rng.hpp"

namespace poseadapt::datagen {

void DomainSpec::validate() const {
  if (blur_sigma < 0.0) throw ConfigError("blur_sigma must be >= 0");
  for (double s : color_shift)
    if (s < -0.3 || s > 0.3) throw ConfigError("color_shift entries must lie in [-0.3, 0.3]");
  if (noise_std < 0.0 || noise_std > 0.2) throw ConfigError("noise_std must lie in [0, 0.2]");
  if (pose_distribution_shift < 0.0 || pose_distribution_shift > 1.0)
    throw ConfigError("pose_distribution_shift must lie in [0, 1]");
  if (scale_range[0] <= 0.0 || scale_range[1] > 0.95 || scale_range[0] > scale_range[1])
    throw ConfigError("scale_range must satisfy 0 < min <= max <= 0.95");
}

DomainSpec source_preset() { return DomainSpec{}; }

DomainSpec target_preset() {
  DomainSpec d;
  d.blur_sigma = 1.0;
  d.color_shift = {0.12, -0.10, 0.08};
  d.noise_std = 0.05;
  d.background_mode = BackgroundMode::kTextured;
  d.pose_distribution_shift = 0.5;
  d.scale_range = {0.50, 0.80};
  return d;
}

const std::array<AngleRange, kNumAngles>& angle_ranges() {
  static const std::array<AngleRange, kNumAngles> r = {{
      {-0.30, 0.30, 0.5},   // spine tilt
      {-0.35, 0.35, -0.4},  // head tilt
      {-0.50, 2.60, 0.6},   // shoulder L (0 = arm down, 2.6 = overhead)
      {-0.50, 2.60, 0.6},   // shoulder R
      {0.00, 2.40, 0.4},    // elbow L flexion
      {0.00, 2.40, 0.4},    // elbow R flexion
      {-0.25, 0.90, 0.5},   // hip L
      {-0.25, 0.90, 0.5},   // hip R
      {0.00, 2.60, 0.5},    // knee L flexion
      {0.00, 2.60, 0.5},    // knee R flexion
  }};
  return r;
}

namespace {

struct Vec2 {
  double x, y;
};
Vec2 rot(Vec2 v, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

// Body proportions as fractions of the figure height.
constexpr double kSpineFrac = 0.30;
constexpr double kHeadFrac = 0.20;
constexpr double kUpperArmFrac = 0.16;
constexpr double kForearmFrac = 0.15;
constexpr double kThighFrac = 0.26;
constexpr double kShinFrac = 0.26;
constexpr double kShoulderHalfFrac = 0.10;
constexpr double kHipHalfFrac = 0.065;
constexpr double kArmRadiusFrac = 0.032;
constexpr double kLegRadiusFrac = 0.044;

double sample_angle(const AngleRange& r, double shift, double u) {
  const double c0 = 0.5 * (r.lo + r.hi);
  const double h0 = 0.5 * (r.hi - r.lo);
  double c = c0 + r.shift_dir * shift * 0.45 * h0;
  double h = h0 * (1.0 - 0.30 * shift);
  // keep the effective range inside the anatomical one
  c = std::clamp(c, r.lo + h, r.hi - h);
  return c - h + 2.0 * h * u;
}

}  // namespace

FigureSpec sample_figure(std::uint64_t rng_seed, const DomainSpec& domain) {
  std::mt19937_64 rng(mix_seed(rng_seed, stream_tag("figure")));
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  FigureSpec f;
  // Fixed draw sequence: the stream consumed never depends on parameter
  // values, so two domains with the same seed differ only through the
  // range transforms.
  const double u_scale = uni(rng);
  const double u_torso = uni(rng);
  const double u_rootx = uni(rng);
  const double u_rooty = uni(rng);
  std::array<double, kNumAngles> u_ang{};
  for (auto& u : u_ang) u = uni(rng);
  std::array<double, kNumLimbs> u_len{};
  for (auto& u : u_len) u = uni(rng);

  f.scale = domain.scale_range[0] + (domain.scale_range[1] - domain.scale_range[0]) * u_scale;
  const double h = f.scale;
  f.torso_width = (0.20 + 0.10 * u_torso) * h;

  const auto& ranges = angle_ranges();
  for (int a = 0; a < kNumAngles; ++a)
    f.joint_angles[a] = sample_angle(ranges[a], domain.pose_distribution_shift, u_ang[a]);

  const std::array<double, kNumLimbs> base = {
      kSpineFrac, kHeadFrac, kUpperArmFrac, kUpperArmFrac, kForearmFrac,
      kForearmFrac, kThighFrac, kThighFrac, kShinFrac, kShinFrac};
  for (int l = 0; l < kNumLimbs; ++l)
    f.limb_lengths[l] = base[l] * h * (0.93 + 0.14 * u_len[l]);

  // Place the pelvis so the rendered figure, limb thickness included, stays
  // inside the unit square.
  f.root_position = {0.5, 0.55};
  const Skeleton sk = build_skeleton(f);
  double minx = 1e9, maxx = -1e9, miny = 1e9, maxy = -1e9;
  auto grow = [&](double x, double y, double r) {
    minx = std::min(minx, x - r);
    maxx = std::max(maxx, x + r);
    miny = std::min(miny, y - r);
    maxy = std::max(maxy, y + r);
  };
  for (int j = 0; j < kNumJoints; ++j) grow(sk.jx[j], sk.jy[j], kLegRadiusFrac * h);
  grow(sk.head_cx, sk.head_cy, sk.head_r);
  grow(sk.torso_cx, sk.torso_cy, std::max(sk.torso_a, sk.torso_b));
  // extents relative to the current (centered) root
  const double m = 0.01;
  const double lo_x = (f.root_position[0] - minx) + m, hi_x = 1.0 - (maxx - f.root_position[0]) - m;
  const double lo_y = (f.root_position[1] - miny) + m, hi_y = 1.0 - (maxy - f.root_position[1]) - m;
  f.root_position[0] = lo_x <= hi_x ? lo_x + (hi_x - lo_x) * u_rootx : 0.5 * (lo_x + hi_x);
  f.root_position[1] = lo_y <= hi_y ? lo_y + (hi_y - lo_y) * u_rooty : 0.5 * (lo_y + hi_y);
  return f;
}

Skeleton build_skeleton(const FigureSpec& f) {
  for (int l = 0; l < kNumLimbs; ++l)
    if (f.limb_lengths[l] <= 0.0)
      throw GeometryError("limb " + std::to_string(l) + " has non-positive length");

  const double h = f.scale;
  Skeleton sk;
  sk.pelvis_x = f.root_position[0];
  sk.pelvis_y = f.root_position[1];
  sk.arm_radius = kArmRadiusFrac * h;
  sk.leg_radius = kLegRadiusFrac * h;

  const auto& a = f.joint_angles;
  // up along the spine; y grows downward in image coordinates
  const Vec2 up = rot({0.0, -1.0}, a[kSpineTilt]);
  const Vec2 lat = rot({1.0, 0.0}, a[kSpineTilt]);  // anatomical left (viewer right)
  const Vec2 down{-up.x, -up.y};
  const Vec2 pelvis{sk.pelvis_x, sk.pelvis_y};

  auto add = [](Vec2 p, Vec2 d, double s) { return Vec2{p.x + d.x * s, p.y + d.y * s}; };

  const Vec2 neck = add(pelvis, up, f.limb_lengths[kSpineLen]);
  const Vec2 head_dir = rot(up, a[kHeadTilt]);
  const double head_len = f.limb_lengths[kHeadLen];
  sk.head_r = 0.42 * head_len;
  const Vec2 head_c = add(neck, head_dir, head_len - sk.head_r);
  sk.head_cx = head_c.x;
  sk.head_cy = head_c.y;
  const Vec2 head_top = add(neck, head_dir, head_len);

  sk.torso_cx = 0.5 * (pelvis.x + neck.x);
  sk.torso_cy = 0.5 * (pelvis.y + neck.y);
  sk.torso_ux = up.x;
  sk.torso_uy = up.y;
  sk.torso_a = 0.56 * f.limb_lengths[kSpineLen];
  sk.torso_b = 0.5 * f.torso_width;

  const double sh = kShoulderHalfFrac * h, hip = kHipHalfFrac * h;
  const Vec2 shoulder_base = add(neck, down, 0.04 * h);
  const Vec2 l_sh = add(shoulder_base, lat, sh);
  const Vec2 r_sh = add(shoulder_base, lat, -sh);
  const Vec2 l_hip = add(pelvis, lat, hip);
  const Vec2 r_hip = add(pelvis, lat, -hip);

  // arms: shoulder angle swings the upper arm outward from "down";
  // elbow flexion folds the forearm back toward the body. Signs mirror.
  const Vec2 ua_l = rot(down, a[kShoulderL]);
  const Vec2 ua_r = rot(down, -a[kShoulderR]);
  const Vec2 l_el = add(l_sh, ua_l, f.limb_lengths[kUpperArmL]);
  const Vec2 r_el = add(r_sh, ua_r, f.limb_lengths[kUpperArmR]);
  const Vec2 fa_l = rot(ua_l, a[kElbowL]);
  const Vec2 fa_r = rot(ua_r, -a[kElbowR]);
  const Vec2 l_wr = add(l_el, fa_l, f.limb_lengths[kForearmL]);
  const Vec2 r_wr = add(r_el, fa_r, f.limb_lengths[kForearmR]);

  const Vec2 th_l = rot(down, a[kHipL]);
  const Vec2 th_r = rot(down, -a[kHipR]);
  const Vec2 l_kn = add(l_hip, th_l, f.limb_lengths[kThighL]);
  const Vec2 r_kn = add(r_hip, th_r, f.limb_lengths[kThighR]);
  const Vec2 sh_l = rot(th_l, a[kKneeL]);
  const Vec2 sh_r = rot(th_r, -a[kKneeR]);
  const Vec2 l_an = add(l_kn, sh_l, f.limb_lengths[kShinL]);
  const Vec2 r_an = add(r_kn, sh_r, f.limb_lengths[kShinR]);

  auto put = [&](int j, Vec2 p) {
    sk.jx[j] = p.x;
    sk.jy[j] = p.y;
  };
  put(kHeadTop, head_top);
  put(kNeck, neck);
  put(kLShoulder, l_sh);
  put(kRShoulder, r_sh);
  put(kLElbow, l_el);
  put(kRElbow, r_el);
  put(kLWrist, l_wr);
  put(kRWrist, r_wr);
  put(kLHip, l_hip);
  put(kRHip, r_hip);
  put(kLKnee, l_kn);
  put(kRKnee, r_kn);
  put(kLAnkle, l_an);
  put(kRAnkle, r_an);
  return sk;
}

}  // namespace poseadapt::datagen
