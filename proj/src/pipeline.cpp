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

#include "poseadapt/pipeline.hpp"

#include <cstdio>
#include <map>
#include <tuple>
#include <utility>

#include "poseadapt/datagen/render.hpp"
#include "poseadapt/io/dataset.hpp"

namespace poseadapt::pipeline {

namespace {

Dataset make_split(int n, const datagen::DomainSpec& domain, std::uint64_t seed, int resolution,
                   DomainTag tag) {
  Dataset ds;
  ds.resolution = resolution;
  ds.samples = datagen::generate_samples(n, domain, seed, resolution, tag);
  for (Sample& s : ds.samples) io::quantize_image_inplace(s.image);
  return ds;
}

seg::TrainSchedule with_derived_seed(seg::TrainSchedule s, const io::RunConfig& cfg,
                                     const char* stage) {
  if (s.seed == 0) s.seed = derived_seed(cfg, stage);
  return s;
}

}  // namespace

std::uint64_t derived_seed(const io::RunConfig& cfg, const char* stage) {
  return mix_seed(cfg.seed, stream_tag(stage));
}

PreparedData prepare_data(const io::RunConfig& cfg) {
  cfg.validate();
  const std::uint64_t base = mix_seed(cfg.seed, stream_tag("data"));
  // disjoint per-sample seed windows keep eval splits out of the train splits
  const std::uint64_t s_src = base;
  const std::uint64_t s_src_eval = base + cfg.data.n_source;
  const std::uint64_t s_tgt = s_src_eval + cfg.data.n_source_eval;
  const std::uint64_t s_tgt_eval = s_tgt + cfg.data.n_target;

  PreparedData d;
  d.source = make_split(cfg.data.n_source, cfg.data.source_domain, s_src, cfg.resolution,
                        DomainTag::kSource);
  d.source_eval = make_split(cfg.data.n_source_eval, cfg.data.source_domain, s_src_eval,
                             cfg.resolution, DomainTag::kSource);
  Dataset target_full = make_split(cfg.data.n_target, cfg.data.target_domain, s_tgt,
                                   cfg.resolution, DomainTag::kTarget);
  d.target_eval = make_split(cfg.data.n_target_eval, cfg.data.target_domain, s_tgt_eval,
                             cfg.resolution, DomainTag::kTarget);

  // the adaptation trainer never sees target masks or keypoints; the oracle
  // table is split off for the pose provider
  d.target_oracle.reserve(target_full.samples.size());
  d.target_images.resolution = target_full.resolution;
  d.target_images.samples.reserve(target_full.samples.size());
  for (Sample& s : target_full.samples) {
    d.target_oracle.push_back(*s.keypoints);
    Sample stripped;
    stripped.image = std::move(s.image);
    stripped.domain = DomainTag::kTarget;
    stripped.id = s.id;
    d.target_images.samples.push_back(std::move(stripped));
  }
  return d;
}

seg::SegModel run_pretrain(const io::RunConfig& cfg, const Dataset& source,
                           std::vector<seg::EpochLoss>* history) {
  return seg::pretrain_source(source, with_derived_seed(cfg.pretrain, cfg, "pretrain"), history);
}

prior::PriorModel run_train_prior(const io::RunConfig& cfg, const Dataset& source,
                                  std::vector<double>* history) {
  std::vector<std::pair<KeypointSet, HardMask>> pairs;
  pairs.reserve(source.samples.size());
  for (const Sample& s : source.samples) {
    if (!s.mask || !s.keypoints)
      throw MissingLabels("prior training needs keypoint/mask pairs");
    pairs.emplace_back(*s.keypoints, *s.mask);
  }
  prior::PriorTrainConfig pc = cfg.prior;
  if (pc.seed == 0) pc.seed = derived_seed(cfg, "prior");
  return prior::train_prior(pairs, pc, cfg.resolution, history);
}

metrics::IoUReport evaluate_prior(const prior::PriorModel& model, const Dataset& data) {
  metrics::ConfusionAccumulator acc;
  for (const Sample& s : data.samples) {
    if (!s.mask || !s.keypoints) throw MissingLabels("prior evaluation needs labeled samples");
    metrics::accumulate(acc, argmax_mask(model.infer(*s.keypoints)), *s.mask);
  }
  return metrics::report(acc);
}

SeedStage build_seed_stage(io::RunConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  SeedStage st;
  st.seed = seed;
  st.data = prepare_data(cfg);
  st.source_model = run_pretrain(cfg, st.data.source);
  st.prior_model = run_train_prior(cfg, st.data.source);
  st.source_on_source = metrics::evaluate_segmentation(st.source_model, st.data.source_eval);
  st.source_on_target = metrics::evaluate_segmentation(st.source_model, st.data.target_eval);
  st.prior_on_source = evaluate_prior(st.prior_model, st.data.source_eval);
  return st;
}

VariantResult run_variant(const SeedStage& stage, const io::RunConfig& cfg,
                          const adapt::AdaptConfig& acfg_in) {
  adapt::AdaptConfig acfg = acfg_in;
  io::RunConfig seeded = cfg;
  seeded.seed = stage.seed;
  if (acfg.schedule.seed == 0) acfg.schedule.seed = derived_seed(seeded, "adapt");
  pose::PoseCorruption corr = acfg.pose_corruption;
  if (corr.seed == 0) corr.seed = derived_seed(seeded, "pose");
  const pose::PoseProvider provider(stage.data.target_oracle, corr);

  VariantResult out;
  adapt::AdaptResult res =
      acfg.source_free
          ? adapt::adapt_sf(stage.source_model, stage.prior_model, provider,
                            stage.data.target_images, stage.data.target_eval, acfg)
          : adapt::adapt_posture(stage.source_model, stage.prior_model, provider,
                                 stage.data.source, stage.data.target_images,
                                 stage.data.target_eval, acfg);
  out.model = std::move(res.first);
  out.records = std::move(res.second);
  out.final_report = metrics::evaluate_segmentation(out.model, stage.data.target_eval);
  return out;
}

std::vector<LadderRow> ablation_ladder(const io::RunConfig& base,
                                       const std::vector<std::uint64_t>& seeds,
                                       std::vector<SeedStage>* stages_out) {
  if (seeds.size() < 3) throw ConfigError("the ablation ladder needs at least 3 seeds");

  struct Rung {
    std::string name;
    adapt::LossTerms terms;
  };
  const std::vector<Rung> rungs = {
      {"source_only", {false, false, false, false}},
      {"source+plain_pseudo", {true, true, false, false}},
      {"prior_only", {false, false, true, false}},
      {"source+plain_pseudo+prior", {true, true, true, false}},
      {"full", {true, false, true, true}},
  };

  std::vector<LadderRow> rows(rungs.size());
  for (std::size_t r = 0; r < rungs.size(); ++r) rows[r].name = rungs[r].name;

  for (std::uint64_t seed : seeds) {
    SeedStage stage = build_seed_stage(base, seed);
    for (std::size_t r = 0; r < rungs.size(); ++r) {
      double miou;
      if (r == 0) {
        miou = stage.source_on_target.mean;  // rung 1 is the pretrain checkpoint itself
      } else {
        adapt::AdaptConfig acfg = base.adapt;
        acfg.source_free = false;
        acfg.terms = rungs[r].terms;
        miou = run_variant(stage, base, acfg).final_report.mean;
      }
      rows[r].per_seed_miou.push_back(miou);
    }
    if (stages_out) stages_out->push_back(std::move(stage));
  }
  for (auto& row : rows) {
    double s = 0.0;
    for (double v : row.per_seed_miou) s += v;
    row.mean_miou = s / row.per_seed_miou.size();
  }
  return rows;
}

std::vector<SweepPoint> sensitivity_sweep(const io::RunConfig& base,
                                          const std::vector<std::pair<double, double>>& alpha_beta,
                                          const std::vector<double>& gammas) {
  SeedStage stage = build_seed_stage(base, base.seed);
  std::vector<SweepPoint> points;
  std::map<std::tuple<double, double, double>, double> seen;  // grids share the default point
  auto run_point = [&](double a, double b, double g, const std::string& label) {
    SweepPoint p{label, a, b, g, 0.0};
    const auto key = std::make_tuple(a, b, g);
    if (auto it = seen.find(key); it != seen.end()) {
      p.miou = it->second;
    } else {
      adapt::AdaptConfig acfg = base.adapt;
      acfg.selection.alpha = a;
      acfg.selection.beta = b;
      acfg.selection.gamma = g;
      p.miou = run_variant(stage, base, acfg).final_report.mean;
      seen.emplace(key, p.miou);
    }
    points.push_back(p);
  };
  char buf[64];
  for (const auto& [a, b] : alpha_beta) {
    std::snprintf(buf, sizeof(buf), "alpha=%.2f beta=%.2f", a, b);
    run_point(a, b, base.adapt.selection.gamma, buf);
  }
  for (double g : gammas) {
    std::snprintf(buf, sizeof(buf), "gamma=%.2f", g);
    run_point(base.adapt.selection.alpha, base.adapt.selection.beta, g, buf);
  }
  return points;
}

}  // namespace poseadapt::pipeline
