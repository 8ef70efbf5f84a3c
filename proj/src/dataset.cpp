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

#include "poseadapt/io/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "poseadapt/datagen/render.hpp"
#include "poseadapt/io/png_io.hpp"
#include "poseadapt/io/serialize.hpp"

namespace fs = std::filesystem;

namespace poseadapt::io {

namespace {

std::string entry_name(int idx, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d.%s", idx, ext);
  return buf;
}

PngImage image_to_png(const Image& img) {
  PngImage p;
  p.width = img.w;
  p.height = img.h;
  p.channels = 3;
  p.pixels.resize(std::size_t(img.w) * img.h * 3);
  for (int y = 0; y < img.h; ++y)
    for (int x = 0; x < img.w; ++x)
      for (int c = 0; c < 3; ++c)
        p.pixels[(std::size_t(y) * img.w + x) * 3 + c] =
            static_cast<std::uint8_t>(std::lround(std::clamp(img.at(c, y, x), 0.f, 1.f) * 255.f));
  return p;
}

Image image_from_png(const PngImage& p) {
  if (p.channels != 3) throw IoError("expected RGB image png");
  Image img(p.height, p.width);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(c, y, x) = p.pixels[(std::size_t(y) * p.width + x) * 3 + c] / 255.f;
  return img;
}

Json keypoints_to_json(const KeypointSet& kp) {
  Json coords = Json::array(), visible = Json::array();
  for (int j = 0; j < kNumJoints; ++j) {
    coords.push_back({kp.x[j], kp.y[j]});
    visible.push_back(kp.visible[j]);
  }
  return Json{{"coords", coords}, {"visible", visible}};
}

KeypointSet keypoints_from_json(const Json& j, const std::string& ctx) {
  KeypointSet kp;
  StrictObject o(j, ctx);
  std::vector<std::array<float, 2>> coords;
  std::vector<bool> visible;
  o.require("coords", coords);
  o.require("visible", visible);
  o.finish();
  if (coords.size() != kNumJoints || visible.size() != kNumJoints)
    throw IoError(ctx + ": expected " + std::to_string(kNumJoints) + " joints");
  for (int i = 0; i < kNumJoints; ++i) {
    kp.x[i] = coords[i][0];
    kp.y[i] = coords[i][1];
    kp.visible[i] = visible[i];
  }
  return kp;
}

}  // namespace

void quantize_image_inplace(Image& img) {
  for (auto& v : img.chw)
    v = static_cast<float>(std::lround(std::clamp(v, 0.f, 1.f) * 255.f)) / 255.f;
}

Manifest write_dataset(const std::vector<Sample>& samples, const datagen::DomainSpec& domain,
                       std::uint64_t seed, const std::string& out_dir, int resolution) {
  std::error_code ec;
  for (const char* sub : {"", "images", "masks", "keypoints"}) {
    fs::create_directories(fs::path(out_dir) / sub, ec);
    if (ec) throw IoError("cannot create " + (fs::path(out_dir) / sub).string());
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    write_png((fs::path(out_dir) / "images" / entry_name(int(i), "png")).string(),
              image_to_png(s.image));
    if (!s.mask) throw IoError("sample missing mask at index " + std::to_string(i));
    PngImage mp;
    mp.width = s.mask->w;
    mp.height = s.mask->h;
    mp.channels = 1;
    mp.pixels = s.mask->m;
    write_png((fs::path(out_dir) / "masks" / entry_name(int(i), "png")).string(), mp);
    if (!s.keypoints) throw IoError("sample missing keypoints at index " + std::to_string(i));
    write_json_file((fs::path(out_dir) / "keypoints" / entry_name(int(i), "json")).string(),
                    keypoints_to_json(*s.keypoints));
  }
  Manifest m;
  m.count = static_cast<int>(samples.size());
  m.resolution = resolution;
  m.seed = seed;
  m.domain = domain;
  write_json_file((fs::path(out_dir) / "manifest.json").string(),
                  Json{{"count", m.count},
                       {"resolution", m.resolution},
                       {"seed", m.seed},
                       {"format_version", m.format_version},
                       {"domain", domain_to_json(domain)}});
  return m;
}

Manifest generate_dataset(int n, const datagen::DomainSpec& domain, std::uint64_t seed,
                          const std::string& out_dir, int resolution, DomainTag tag) {
  const auto samples = datagen::generate_samples(n, domain, seed, resolution, tag);
  return write_dataset(samples, domain, seed, out_dir, resolution);
}

Manifest read_manifest(const std::string& dir) {
  const Json j = load_json_file((fs::path(dir) / "manifest.json").string());
  Manifest m;
  StrictObject o(j, "manifest");
  o.require("count", m.count);
  o.require("resolution", m.resolution);
  o.require("seed", m.seed);
  o.require("format_version", m.format_version);
  if (const Json* d = o.optional_object("domain")) m.domain = domain_from_json(*d, "manifest.domain");
  o.finish();
  if (m.format_version != kDatasetFormatVersion)
    throw IoError(dir + ": unsupported dataset format_version " +
                  std::to_string(m.format_version));
  return m;
}

Dataset load_dataset(const std::string& dir, LoadMode mode) {
  const Manifest m = read_manifest(dir);
  Dataset ds;
  ds.resolution = m.resolution;
  ds.samples.reserve(m.count);
  for (int i = 0; i < m.count; ++i) {
    Sample s;
    s.id = i;
    s.image = image_from_png(read_png((fs::path(dir) / "images" / entry_name(i, "png")).string()));
    if (mode == LoadMode::kFull) {
      const PngImage mp = read_png((fs::path(dir) / "masks" / entry_name(i, "png")).string());
      if (mp.channels != 1) throw IoError("mask png must be single channel");
      HardMask mask(mp.height, mp.width);
      mask.m = mp.pixels;
      for (std::uint8_t v : mask.m)
        if (v >= kNumClasses && v != kIgnoreLabel)
          throw IoError("mask contains invalid label " + std::to_string(int(v)));
      s.mask = std::move(mask);
      s.keypoints = keypoints_from_json(
          load_json_file((fs::path(dir) / "keypoints" / entry_name(i, "json")).string()),
          "keypoints");
      s.domain = DomainTag::kSource;
    } else {
      s.domain = DomainTag::kTarget;
    }
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

std::vector<KeypointSet> load_keypoint_table(const std::string& dir) {
  const Manifest m = read_manifest(dir);
  std::vector<KeypointSet> out;
  out.reserve(m.count);
  for (int i = 0; i < m.count; ++i)
    out.push_back(keypoints_from_json(
        load_json_file((fs::path(dir) / "keypoints" / entry_name(i, "json")).string()),
        "keypoints"));
  return out;
}

}  // namespace poseadapt::io
