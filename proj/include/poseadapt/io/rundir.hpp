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

#include <fstream>
#include <string>

#include "poseadapt/io/runconfig.hpp"
#include "poseadapt/metrics/iou.hpp"

namespace poseadapt::io {

// One run = one directory under out_dir:
//   config.json, metrics.jsonl, checkpoints/, results.csv, plots/
// Creation fails if the directory exists, unless forced. The directory is
// held under an exclusive advisory lock for the lifetime of the handle.
class RunDirectory {
 public:
  static RunDirectory create(const RunConfig& cfg, bool force);
  static RunDirectory create_at(const std::string& dir, bool force);

  /// Opens an existing run directory without locking (read-only use).
  static std::string metrics_path_of(const std::string& dir);

  const std::string& path() const { return dir_; }
  std::string checkpoint_path(const std::string& name) const;

  /// Appends one self-describing JSON record as a single line.
  void log_metrics(const Json& record);

  /// Appends a row to results.csv (header written on first call): a label
  /// followed by the seven per-class IoUs and their mean.
  void append_result_row(const std::string& label, const metrics::IoUReport& rep);

  RunDirectory(RunDirectory&&) noexcept;
  RunDirectory& operator=(RunDirectory&&) noexcept;
  ~RunDirectory();

 private:
  RunDirectory() = default;
  std::string dir_;
  int lock_fd_ = -1;
  std::ofstream metrics_;
  bool results_header_written_ = false;
};

/// CSV row in the results-table column order (label, BG..RL, Avg.).
std::string result_row_csv(const std::string& label, const metrics::IoUReport& rep);
std::string result_header_csv();

}  // namespace poseadapt::io
