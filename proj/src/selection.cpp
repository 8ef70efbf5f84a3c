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

#include "poseadapt/pseudo/selection.hpp"

#include <string>

#include "poseadapt/metrics/iou.hpp"

namespace poseadapt::pseudo {

void SelectionConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(tau) || !in_unit(gamma) || !in_unit(alpha) || !in_unit(beta))
    throw ConfigError("selection thresholds must lie in (0,1]");
  if (beta < alpha) throw ConfigError("beta must be >= alpha");
}

HardMask extract_pseudo_labels(const ProbMap& pm, double threshold) {
  HardMask out(pm.h, pm.w, kIgnoreLabel);
  const int n = pm.plane();
  const float t = static_cast<float>(threshold);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    float bv = pm.p[i];
    for (int c = 1; c < pm.k; ++c) {
      const float v = pm.p[std::size_t(c) * n + i];
      if (v > bv) {
        bv = v;
        best = c;
      }
    }
    if (bv >= t) out.m[i] = static_cast<std::uint8_t>(best);
  }
  return out;
}

std::vector<double> score_batch(const std::vector<ProbMap>& preds,
                                const std::vector<HardMask>& priors) {
  if (preds.size() != priors.size())
    throw ShapeMismatch("score_batch: " + std::to_string(preds.size()) + " predictions vs " +
                        std::to_string(priors.size()) + " priors");
  std::vector<double> h(preds.size());
  for (std::size_t j = 0; j < preds.size(); ++j)
    h[j] = metrics::miou_image(argmax_mask(preds[j]), priors[j]);
  return h;
}

BatchSplit split_batch(const std::vector<double>& scores, double gamma) {
  BatchSplit out;
  out.scores = scores;
  for (int j = 0; j < static_cast<int>(scores.size()); ++j) {
    if (scores[j] >= gamma)
      out.reliable_indices.push_back(j);
    else
      out.unreliable_indices.push_back(j);
  }
  out.lambda = scores.empty()
                   ? 0.0
                   : static_cast<double>(out.reliable_indices.size()) / scores.size();
  return out;
}

}  // namespace poseadapt::pseudo
