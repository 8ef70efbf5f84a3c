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

#include "poseadapt/io/rundir.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>

namespace fs = std::filesystem;

namespace poseadapt::io {

RunDirectory RunDirectory::create(const RunConfig& cfg, bool force) {
  RunDirectory rd = create_at((fs::path(cfg.out_dir) / cfg.run_name).string(), force);
  save_runconfig((fs::path(rd.dir_) / "config.json").string(), cfg);
  return rd;
}

RunDirectory RunDirectory::create_at(const std::string& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir)) {
    if (!force)
      throw IoError("run directory already exists (use --force to overwrite): " + dir);
    fs::remove_all(dir, ec);
    if (ec) throw IoError("cannot clear run directory " + dir);
  }
  for (const char* sub : {"", "checkpoints", "plots"}) {
    fs::create_directories(fs::path(dir) / sub, ec);
    if (ec) throw IoError("cannot create run directory " + dir);
  }
  RunDirectory rd;
  rd.dir_ = dir;
  const std::string lock_path = (fs::path(dir) / ".lock").string();
  rd.lock_fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
  if (rd.lock_fd_ < 0) throw IoError("cannot open lock file " + lock_path);
  if (::flock(rd.lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(rd.lock_fd_);
    rd.lock_fd_ = -1;
    throw IoError("run directory is locked by another process: " + dir);
  }
  rd.metrics_.open((fs::path(dir) / "metrics.jsonl").string(), std::ios::app);
  if (!rd.metrics_) throw IoError("cannot open metrics log in " + dir);
  return rd;
}

std::string RunDirectory::metrics_path_of(const std::string& dir) {
  return (fs::path(dir) / "metrics.jsonl").string();
}

std::string RunDirectory::checkpoint_path(const std::string& name) const {
  return (fs::path(dir_) / "checkpoints" / name).string();
}

void RunDirectory::log_metrics(const Json& record) {
  metrics_ << record.dump() << "\n";
  metrics_.flush();
  if (!metrics_) throw IoError("metrics log write failed in " + dir_);
}

std::string result_header_csv() {
  std::string h = "name";
  for (const auto& n : class_table().names) h += "," + n;
  return h + ",Avg.";
}

std::string result_row_csv(const std::string& label, const metrics::IoUReport& rep) {
  char buf[32];
  std::string row = label;
  for (int c = 0; c < kNumClasses; ++c) {
    if (rep.per_class[c]) {
      std::snprintf(buf, sizeof(buf), ",%.4f", *rep.per_class[c]);
      row += buf;
    } else {
      row += ",";
    }
  }
  std::snprintf(buf, sizeof(buf), ",%.4f", rep.mean);
  row += buf;
  return row;
}

void RunDirectory::append_result_row(const std::string& label, const metrics::IoUReport& rep) {
  const fs::path csv = fs::path(dir_) / "results.csv";
  std::error_code ec;
  const bool empty = !fs::exists(csv, ec) || fs::file_size(csv, ec) == 0;
  std::ofstream out(csv.string(), std::ios::app);
  if (!out) throw IoError("cannot open results.csv in " + dir_);
  if (!results_header_written_ && empty) out << result_header_csv() << "\n";
  results_header_written_ = true;
  out << result_row_csv(label, rep) << "\n";
}

RunDirectory::RunDirectory(RunDirectory&& o) noexcept
    : dir_(std::move(o.dir_)),
      lock_fd_(o.lock_fd_),
      metrics_(std::move(o.metrics_)),
      results_header_written_(o.results_header_written_) {
  o.lock_fd_ = -1;
}

RunDirectory& RunDirectory::operator=(RunDirectory&& o) noexcept {
  if (this != &o) {
    if (lock_fd_ >= 0) ::close(lock_fd_);
    dir_ = std::move(o.dir_);
    lock_fd_ = o.lock_fd_;
    metrics_ = std::move(o.metrics_);
    results_header_written_ = o.results_header_written_;
    o.lock_fd_ = -1;
  }
  return *this;
}

RunDirectory::~RunDirectory() {
  if (lock_fd_ >= 0) ::close(lock_fd_);  // closing releases the flock
}

}  // namespace poseadapt::io
