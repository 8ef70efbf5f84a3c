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

#include "poseadapt/io/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "poseadapt/io/serialize.hpp"

#ifndef POSEADAPT_GIT_DESC
#define POSEADAPT_GIT_DESC "unknown"
#endif

namespace poseadapt::io {

namespace {

constexpr char kMagic[8] = {'P', 'A', 'C', 'K', 'P', 'T', '0', '1'};

void write_blob(const std::string& path, const std::vector<nn::Param<float>*>& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t n = static_cast<std::uint32_t>(params.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (const auto* p : params) {
    const std::uint64_t sz = p->size();
    out.write(reinterpret_cast<const char*>(&sz), sizeof(sz));
    out.write(reinterpret_cast<const char*>(p->val.data()),
              static_cast<std::streamsize>(sz * sizeof(float)));
  }
  if (!out) throw IoError("write failed: " + path);
}

void read_blob(const std::string& path, const std::vector<nn::Param<float>*>& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw IoError(path + ": not a checkpoint blob");
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (n != params.size())
    throw IoError(path + ": parameter count mismatch (" + std::to_string(n) + " vs " +
                  std::to_string(params.size()) + ")");
  for (auto* p : params) {
    std::uint64_t sz = 0;
    in.read(reinterpret_cast<char*>(&sz), sizeof(sz));
    if (!in || sz != p->size()) throw IoError(path + ": parameter size mismatch");
    in.read(reinterpret_cast<char*>(p->val.data()),
            static_cast<std::streamsize>(sz * sizeof(float)));
  }
  if (!in) throw IoError(path + ": truncated checkpoint");
}

Json base_meta(const char* kind, int epoch, const std::string& cfg_hash) {
  return Json{{"format_version", kCheckpointFormatVersion},
              {"kind", kind},
              {"epoch", epoch},
              {"config_hash", cfg_hash},
              {"git_describe", build_version()}};
}

Json read_meta(const std::string& path, const char* kind) {
  const Json meta = load_json_file(path + ".json");
  if (!meta.is_object() || meta.value("kind", "") != kind)
    throw IoError(path + ": sidecar does not describe a " + std::string(kind) + " checkpoint");
  if (meta.value("format_version", -1) != kCheckpointFormatVersion)
    throw IoError(path + ": unsupported checkpoint format_version");
  return meta;
}

}  // namespace

std::string config_hash(const Json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string build_version() { return POSEADAPT_GIT_DESC; }

void save_seg_checkpoint(const std::string& path, const seg::SegModel& model, int epoch,
                         const std::string& cfg_hash) {
  auto& net = const_cast<seg::SegModel&>(model).net;
  write_blob(path, net.params());
  Json meta = base_meta("seg", epoch, cfg_hash);
  meta["resolution"] = net.resolution;
  meta["classes"] = net.k_classes;
  write_json_file(path + ".json", meta);
}

seg::SegModel load_seg_checkpoint(const std::string& path) {
  const Json meta = read_meta(path, "seg");
  seg::SegModel m = seg::SegModel::create(meta.at("resolution").get<int>(), 0,
                                          meta.at("classes").get<int>());
  read_blob(path, m.net.params());
  return m;
}

void save_prior_checkpoint(const std::string& path, const prior::PriorModel& model, int epoch,
                           const std::string& cfg_hash) {
  auto& net = const_cast<prior::PriorModel&>(model).net;
  write_blob(path, net.params());
  Json meta = base_meta("prior", epoch, cfg_hash);
  meta["resolution"] = net.resolution;
  meta["classes"] = net.k_classes;
  meta["grid_size"] = net.grid;
  meta["grid_channels"] = net.grid_channels;
  write_json_file(path + ".json", meta);
}

prior::PriorModel load_prior_checkpoint(const std::string& path) {
  const Json meta = read_meta(path, "prior");
  prior::PriorModel m;
  m.net.init(meta.at("resolution").get<int>(), meta.at("classes").get<int>(), 0,
             meta.at("grid_size").get<int>(), meta.at("grid_channels").get<int>());
  read_blob(path, m.net.params());
  return m;
}

}  // namespace poseadapt::io
