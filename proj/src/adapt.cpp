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

#include "poseadapt/adapt/adapt.hpp"

#include <random>
#include <unordered_map>

#include "poseadapt/metrics/eval.hpp"
#include "poseadapt/nn/parallel.hpp"

namespace poseadapt::adapt {

void AdaptConfig::validate() const {
  selection.validate();
  schedule.validate();
  pose_corruption.validate();
  for (double e : eta)
    if (e < 0.0) throw ConfigError("eta weights must be >= 0");
  if (source_free && terms.source)
    throw ConfigError("a source-free objective cannot include the source term");
}

double loss_pl(const ProbMap& pm, double threshold) {
  return seg::ce_loss(pm, pseudo::extract_pseudo_labels(pm, threshold));
}

double loss_p2s(const ProbMap& pm, const HardMask& prior_mask) {
  return seg::ce_loss(pm, prior_mask);
}

double loss_rpl(const std::vector<ProbMap>& batch_pms, const pseudo::BatchSplit& split,
                const pseudo::SelectionConfig& sel) {
  const int b = static_cast<int>(batch_pms.size());
  if (static_cast<int>(split.reliable_indices.size() + split.unreliable_indices.size()) != b)
    throw InvalidSplit("split does not partition the batch");
  std::vector<bool> seen(b, false);
  for (int j : split.reliable_indices) {
    if (j < 0 || j >= b || seen[j]) throw InvalidSplit("bad reliable index");
    seen[j] = true;
  }
  for (int j : split.unreliable_indices) {
    if (j < 0 || j >= b || seen[j]) throw InvalidSplit("bad unreliable index");
    seen[j] = true;
  }
  sel.validate();

  auto split_mean_ce = [&](const std::vector<int>& idx, double threshold) {
    double sum = 0.0;
    long count = 0;
    for (int j : idx) {
      nn::Tensor<float> t(batch_pms[j].k, batch_pms[j].h, batch_pms[j].w);
      t.v = batch_pms[j].p;
      const nn::CeSum s =
          nn::masked_ce_sum(t, pseudo::extract_pseudo_labels(batch_pms[j], threshold));
      sum += s.sum;
      count += s.count;
    }
    return count == 0 ? 0.0 : sum / count;
  };
  const double lam = split.lambda;
  double out = 0.0;
  if (!split.reliable_indices.empty())
    out += lam * split_mean_ce(split.reliable_indices, sel.alpha);
  if (!split.unreliable_indices.empty())
    out += (1.0 - lam) * split_mean_ce(split.unreliable_indices, sel.beta);
  return out;
}

namespace {

// Single iteration state for the target batch.
struct TargetBatchState {
  std::vector<seg::SegNet::Acts> acts;
  std::vector<ProbMap> probs;
  std::vector<const HardMask*> prior_masks;
  std::vector<HardMask> labels_rpl;   // alpha/beta-thresholded pseudo-labels
  std::vector<HardMask> labels_tau;   // plain tau-thresholded pseudo-labels
};

struct IterStats {
  double l_s = 0.0, l_pl = 0.0, l_p2s = 0.0, l_rpl = 0.0, lambda = 0.0, coverage = 0.0;
};

// Shared engine behind adapt_posture and adapt_sf. `source` is null in the
// source-free path, which structurally removes any source-data access.
AdaptResult run_adaptation(const seg::SegModel& init, const prior::PriorModel& prior_model,
                           const pose::PoseProvider& provider, const Dataset* source,
                           const Dataset& target, const Dataset& target_eval,
                           const AdaptConfig& cfg) {
  cfg.validate();
  if (cfg.terms.source) {
    if (source == nullptr || source->size() == 0)
      throw MissingSourceData("adaptation objective includes the source term but no source data");
    for (const Sample& s : source->samples)
      if (!s.mask) throw MissingLabels("source sample without mask");
  }
  if (target.size() == 0) throw EmptyDataset("empty target dataset");

  const auto& sched = cfg.schedule;
  // Source-free: the source weight is dead weight by definition.
  const double eta1 = cfg.source_free ? 0.0 : cfg.eta[0];
  const double eta2 = cfg.eta[1];
  const double eta3 = cfg.eta[2];

  seg::SegModel model = init;  // adaptation starts from the source checkpoint
  auto params = model.net.params();
  nn::Adam<float> adam(params);
  nn::GradArena<float> grads(params);

  // Independent streams so the source-batch trajectory is unaffected by how
  // many target draws happen and vice versa.
  auto rng_src = make_rng(sched.seed, "adapt-src");
  auto rng_tgt = make_rng(sched.seed, "adapt-tgt");

  const int b = sched.batch_size;
  std::vector<seg::SegNet::Acts> src_acts(b);
  std::vector<nn::Tensor<float>> src_probs(b);
  TargetBatchState tb;
  tb.acts.resize(b);
  tb.probs.resize(b);
  tb.prior_masks.resize(b);
  tb.labels_rpl.resize(b);
  tb.labels_tau.resize(b);
  std::vector<char> is_reliable(b, 0);
  std::vector<nn::GradArena<float>> arenas(2 * b, nn::GradArena<float>(params));

  // The prior pseudo-label of a target image is fixed for the whole run
  // (frozen G, deterministic provider), so it is computed once per image.
  std::unordered_map<int, HardMask> prior_cache;
  auto prior_mask_for = [&](const Sample& s) -> const HardMask* {
    auto it = prior_cache.find(s.id);
    if (it == prior_cache.end())
      it = prior_cache.emplace(s.id, prior::prior_pseudo(prior_model, provider, s)).first;
    return &it->second;
  };

  std::vector<MetricsRecord> records;
  const bool need_target = cfg.terms.plain_pseudo || cfg.terms.prior_consistency ||
                           cfg.terms.reliable;

  for (int epoch = 0; epoch < sched.epochs; ++epoch) {
    const float lr = static_cast<float>(sched.lr_at_epoch(epoch));
    IterStats epoch_sum;
    double epoch_total = 0.0;
    for (int iter = 0; iter < sched.iters_per_epoch; ++iter) {
      IterStats st;
      grads.zero();

      // --- source batch ---
      long src_valid = 0;
      std::vector<int> src_idx;
      if (cfg.terms.source) {
        std::uniform_int_distribution<int> pick(0, source->size() - 1);
        src_idx.resize(b);
        for (int j = 0; j < b; ++j) src_idx[j] = pick(rng_src);
        nn::parallel_for(b, [&](int j) {
          const Sample& s = source->samples[src_idx[j]];
          model.net.forward_logits(nn::tensor_from_image<float>(s.image), src_acts[j]);
          src_probs[j] = nn::softmax_channels(src_acts[j].logits);
        });
        double ce = 0.0;
        for (int j = 0; j < b; ++j) {
          const nn::CeSum s = nn::masked_ce_sum(src_probs[j], *source->samples[src_idx[j]].mask);
          ce += s.sum;
          src_valid += s.count;
        }
        st.l_s = src_valid == 0 ? 0.0 : ce / src_valid;
      }

      // --- target batch ---
      std::vector<int> tgt_idx;
      pseudo::BatchSplit split;
      long n_p2s = 0, n_tau = 0, n_rel = 0, n_unrel = 0;
      if (need_target) {
        std::uniform_int_distribution<int> pick(0, target.size() - 1);
        tgt_idx.resize(b);
        for (int j = 0; j < b; ++j) tgt_idx[j] = pick(rng_tgt);
        for (int j = 0; j < b; ++j) prior_mask_for(target.samples[tgt_idx[j]]);  // warm cache
        nn::parallel_for(b, [&](int j) {
          const Sample& s = target.samples[tgt_idx[j]];
          model.net.forward_logits(nn::tensor_from_image<float>(s.image), tb.acts[j]);
          tb.probs[j] = nn::probmap_move(nn::softmax_channels(tb.acts[j].logits));
        });
        for (int j = 0; j < b; ++j) tb.prior_masks[j] = prior_mask_for(target.samples[tgt_idx[j]]);

        if (cfg.terms.prior_consistency) {
          double ce = 0.0;
          for (int j = 0; j < b; ++j) {
            const nn::CeSum s = nn::masked_ce_sum(tb.probs[j], *tb.prior_masks[j]);
            ce += s.sum;
            n_p2s += s.count;
          }
          st.l_p2s = n_p2s == 0 ? 0.0 : ce / n_p2s;
        }
        if (cfg.terms.plain_pseudo) {
          double ce = 0.0;
          for (int j = 0; j < b; ++j) {
            tb.labels_tau[j] = pseudo::extract_pseudo_labels(tb.probs[j], cfg.selection.tau);
            const nn::CeSum s = nn::masked_ce_sum(tb.probs[j], tb.labels_tau[j]);
            ce += s.sum;
            n_tau += s.count;
          }
          st.l_pl = n_tau == 0 ? 0.0 : ce / n_tau;
        }
        if (cfg.terms.reliable) {
          std::vector<double> scores(b);
          for (int j = 0; j < b; ++j)
            scores[j] = metrics::miou_image(argmax_mask(tb.probs[j]), *tb.prior_masks[j]);
          split = pseudo::split_batch(scores, cfg.selection.gamma);
          st.lambda = split.lambda;
          is_reliable.assign(b, 0);
          for (int j : split.reliable_indices) is_reliable[j] = 1;
          double ce_r = 0.0, ce_u = 0.0;
          for (int j : split.reliable_indices) {
            tb.labels_rpl[j] = pseudo::extract_pseudo_labels(tb.probs[j], cfg.selection.alpha);
            const nn::CeSum s = nn::masked_ce_sum(tb.probs[j], tb.labels_rpl[j]);
            ce_r += s.sum;
            n_rel += s.count;
          }
          for (int j : split.unreliable_indices) {
            tb.labels_rpl[j] = pseudo::extract_pseudo_labels(tb.probs[j], cfg.selection.beta);
            const nn::CeSum s = nn::masked_ce_sum(tb.probs[j], tb.labels_rpl[j]);
            ce_u += s.sum;
            n_unrel += s.count;
          }
          st.l_rpl = 0.0;
          if (n_rel > 0) st.l_rpl += split.lambda * (ce_r / n_rel);
          if (n_unrel > 0) st.l_rpl += (1.0 - split.lambda) * (ce_u / n_unrel);
          st.coverage = static_cast<double>(n_rel + n_unrel) /
                        (static_cast<double>(b) * target.resolution * target.resolution);
        } else if (cfg.terms.plain_pseudo) {
          st.coverage = static_cast<double>(n_tau) /
                        (static_cast<double>(b) * target.resolution * target.resolution);
        }
      }

      // --- backward: labels above are constants; grads flow only through
      // the live forward activations ---
      nn::parallel_for(cfg.terms.source ? 2 * b : b, [&](int slot) {
        const bool is_src = cfg.terms.source && slot >= b;
        const int j = is_src ? slot - b : slot;
        arenas[slot].zero();
        if (is_src) {
          if (eta1 == 0.0 || src_valid == 0) return;
          nn::Tensor<float> gl(src_probs[j].c, src_probs[j].h, src_probs[j].w);
          nn::ce_grad_accum(src_probs[j], *source->samples[src_idx[j]].mask,
                            static_cast<float>(eta1 / src_valid), gl);
          model.net.backward_from_logits(gl, src_acts[j], arenas[slot]);
          return;
        }
        if (!need_target) return;
        nn::Tensor<float> gl(tb.probs[j].k, tb.probs[j].h, tb.probs[j].w);
        bool any = false;
        if (cfg.terms.prior_consistency && eta2 > 0.0 && n_p2s > 0) {
          nn::ce_grad_accum(tb.probs[j], *tb.prior_masks[j],
                            static_cast<float>(eta2 / n_p2s), gl);
          any = true;
        }
        if (cfg.terms.plain_pseudo && eta3 > 0.0 && n_tau > 0) {
          nn::ce_grad_accum(tb.probs[j], tb.labels_tau[j], static_cast<float>(eta3 / n_tau),
                            gl);
          any = true;
        }
        if (cfg.terms.reliable && eta3 > 0.0) {
          const bool rel = is_reliable[j] != 0;
          const long n_split = rel ? n_rel : n_unrel;
          const double w = rel ? split.lambda : 1.0 - split.lambda;
          if (n_split > 0 && w > 0.0) {
            nn::ce_grad_accum(tb.probs[j], tb.labels_rpl[j],
                              static_cast<float>(eta3 * w / n_split), gl);
            any = true;
          }
        }
        if (any) model.net.backward_from_logits(gl, tb.acts[j], arenas[slot]);
      });
      const int used_slots = cfg.terms.source ? 2 * b : b;
      for (int slot = 0; slot < used_slots; ++slot) grads.add(arenas[slot]);
      adam.step(params, grads, lr);

      const double total = eta1 * st.l_s + eta2 * st.l_p2s +
                           eta3 * (cfg.terms.reliable ? st.l_rpl : st.l_pl);
      epoch_total += total;
      epoch_sum.l_s += st.l_s;
      epoch_sum.l_pl += st.l_pl;
      epoch_sum.l_p2s += st.l_p2s;
      epoch_sum.l_rpl += st.l_rpl;
      epoch_sum.lambda += st.lambda;
      epoch_sum.coverage += st.coverage;
    }

    const double inv = 1.0 / sched.iters_per_epoch;
    MetricsRecord rec;
    rec.epoch = epoch;
    rec.loss_s = epoch_sum.l_s * inv;
    rec.loss_pl = epoch_sum.l_pl * inv;
    rec.loss_p2s = epoch_sum.l_p2s * inv;
    rec.loss_rpl = epoch_sum.l_rpl * inv;
    rec.loss_total = epoch_total * inv;
    rec.lambda_mean = epoch_sum.lambda * inv;
    rec.coverage = epoch_sum.coverage * inv;
    const metrics::IoUReport rep = metrics::evaluate_segmentation(model, target_eval);
    rec.target_miou = rep.mean;
    for (int c = 0; c < kNumClasses; ++c)
      rec.per_class[c] = rep.per_class[c] ? *rep.per_class[c] : -1.0;
    records.push_back(rec);
  }
  return {std::move(model), std::move(records)};
}

}  // namespace

AdaptResult adapt_posture(const seg::SegModel& init, const prior::PriorModel& prior_model,
                          const pose::PoseProvider& provider, const Dataset& source,
                          const Dataset& target, const Dataset& target_eval,
                          const AdaptConfig& cfg) {
  if (cfg.source_free)
    throw ConfigError("adapt_posture requires source_free = false; use adapt_sf");
  return run_adaptation(init, prior_model, provider, &source, target, target_eval, cfg);
}

AdaptResult adapt_sf(const seg::SegModel& init, const prior::PriorModel& prior_model,
                     const pose::PoseProvider& provider, const Dataset& target,
                     const Dataset& target_eval, const AdaptConfig& cfg) {
  AdaptConfig sf_cfg = cfg;
  sf_cfg.source_free = true;
  sf_cfg.terms.source = false;
  return run_adaptation(init, prior_model, provider, nullptr, target, target_eval, sf_cfg);
}

}  // namespace poseadapt::adapt
