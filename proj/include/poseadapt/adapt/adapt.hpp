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

#include <array>
#include <utility>
#include <vector>

#include "poseadapt/io/dataset.hpp"
#include "poseadapt/poseprov/provider.hpp"
#include "poseadapt/priornet/compose.hpp"
#include "poseadapt/pseudo/selection.hpp"
#include "poseadapt/segnet/model.hpp"

namespace poseadapt::adapt {

/// Which loss terms enter the objective. The full method uses supervised
/// source CE + prior consistency + reliable pseudo-labels; the ablation
/// rungs toggle subsets, with plain_pseudo standing in for the unsplit
/// confidence-thresholded loss.
struct LossTerms {
  bool source = true;
  bool plain_pseudo = false;
  bool prior_consistency = true;
  bool reliable = true;
};

struct AdaptConfig {
  pseudo::SelectionConfig selection;
  std::array<double, 3> eta{1.0, 1.0, 1.0};  // weights: source, prior, reliable
  seg::TrainSchedule schedule;
  bool source_free = false;
  pose::PoseCorruption pose_corruption;
  LossTerms terms;

  void validate() const;
};

/// One adaptation epoch's diagnostics. per_class entries are negative for
/// classes absent from the evaluation split.
struct MetricsRecord {
  int epoch = 0;
  double loss_s = 0.0;
  double loss_pl = 0.0;
  double loss_p2s = 0.0;
  double loss_rpl = 0.0;
  double loss_total = 0.0;
  double lambda_mean = 0.0;
  double coverage = 0.0;  // fraction of target pixels with a non-ignore pseudo-label
  double target_miou = 0.0;
  std::array<double, kNumClasses> per_class{};
};

/// Confidence-thresholded self-training loss: CE of the probmap against its
/// own thresholded pseudo-labels (labels are constants; no gradient flows
/// through their construction). 0 when no pixel qualifies.
double loss_pl(const ProbMap& pm, double threshold);

/// Anatomical consistency loss: CE against the prior pseudo-label.
double loss_p2s(const ProbMap& pm, const HardMask& prior_mask);

/// Reliable/unreliable split loss: lambda-weighted sum of per-split mean CE,
/// the reliable split thresholded at alpha, the unreliable one at beta. A
/// term with an empty split (or no qualifying pixels) contributes 0.
double loss_rpl(const std::vector<ProbMap>& batch_pms, const pseudo::BatchSplit& split,
                const pseudo::SelectionConfig& sel);

using AdaptResult = std::pair<seg::SegModel, std::vector<MetricsRecord>>;

/// Joint adaptation with source supervision: per iteration draws one source
/// and one target batch (equal size), takes a single gradient step on
/// eta1*L_source + eta2*L_prior + eta3*L_reliable, and evaluates on
/// `target_eval` once per epoch. The returned model is the last-epoch model.
AdaptResult adapt_posture(const seg::SegModel& init, const prior::PriorModel& prior_model,
                          const pose::PoseProvider& provider, const Dataset& source,
                          const Dataset& target, const Dataset& target_eval,
                          const AdaptConfig& cfg);

/// Source-free variant: same loop without the source term (and no source
/// dataset in the signature). `init` is the pretrained source checkpoint.
AdaptResult adapt_sf(const seg::SegModel& init, const prior::PriorModel& prior_model,
                     const pose::PoseProvider& provider, const Dataset& target,
                     const Dataset& target_eval, const AdaptConfig& cfg);

}  // namespace poseadapt::adapt
