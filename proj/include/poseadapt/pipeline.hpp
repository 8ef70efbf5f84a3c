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

#include "poseadapt/adapt/adapt.hpp"
#include "poseadapt/io/runconfig.hpp"
#include "poseadapt/metrics/eval.hpp"

namespace poseadapt::pipeline {

// In-memory experiment driver: datasets, pretraining, prior training and the
// adaptation variants, derived deterministically from one RunConfig. The
// ablation ladder and the sensitivity sweep run through here so that rungs
// and grid points share their per-seed datasets and checkpoints.

struct PreparedData {
  Dataset source, source_eval;
  Dataset target_images;  // adaptation view: images only
  Dataset target_eval;
  std::vector<KeypointSet> target_oracle;  // pose provider table, id-ordered
};

std::uint64_t derived_seed(const io::RunConfig& cfg, const char* stage);

/// Generates the four splits from disjoint per-sample seed windows. Images
/// pass through the on-disk 8-bit quantization so in-memory runs match runs
/// loaded from a dataset directory.
PreparedData prepare_data(const io::RunConfig& cfg);

seg::SegModel run_pretrain(const io::RunConfig& cfg, const Dataset& source,
                           std::vector<seg::EpochLoss>* history = nullptr);

prior::PriorModel run_train_prior(const io::RunConfig& cfg, const Dataset& source,
                                  std::vector<double>* history = nullptr);

/// mIoU of the prior alone: argmax(G(keypoints)) against ground truth.
metrics::IoUReport evaluate_prior(const prior::PriorModel& model, const Dataset& data);

/// Per-seed artifacts shared by every adaptation variant.
struct SeedStage {
  std::uint64_t seed = 0;
  PreparedData data;
  seg::SegModel source_model;
  prior::PriorModel prior_model;
  metrics::IoUReport source_on_source;   // source model on held-out source
  metrics::IoUReport source_on_target;   // the "source only" row
  metrics::IoUReport prior_on_source;    // G alone on held-out source
};

SeedStage build_seed_stage(io::RunConfig cfg, std::uint64_t seed);

/// Runs one adaptation variant on a prepared stage; returns the records and
/// the final target-eval report.
struct VariantResult {
  std::vector<adapt::MetricsRecord> records;
  metrics::IoUReport final_report;
  seg::SegModel model;
};

VariantResult run_variant(const SeedStage& stage, const io::RunConfig& cfg,
                          const adapt::AdaptConfig& acfg);

/// The five-rung loss-term ladder (names fixed):
///   source_only, +plain_pseudo, prior_only, source+plain+prior, full.
struct LadderRow {
  std::string name;
  std::vector<double> per_seed_miou;
  double mean_miou = 0.0;
};

std::vector<LadderRow> ablation_ladder(const io::RunConfig& base,
                                       const std::vector<std::uint64_t>& seeds,
                                       std::vector<SeedStage>* stages_out = nullptr);

/// Sensitivity grid over (alpha, beta) pairs and gamma values, one seed.
struct SweepPoint {
  std::string label;
  double alpha, beta, gamma;
  double miou = 0.0;
};

std::vector<SweepPoint> sensitivity_sweep(const io::RunConfig& base,
                                          const std::vector<std::pair<double, double>>& alpha_beta,
                                          const std::vector<double>& gammas);

}  // namespace poseadapt::pipeline
