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

#include <algorithm>
#include <numeric>
#include <random>

#include "poseadapt/nn/parallel.hpp"
#include "poseadapt/priornet/model.hpp"

namespace poseadapt::prior {

void PriorTrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("prior epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("prior batch_size must be >= 1");
  if (learning_rate <= 0.0) throw ConfigError("prior learning_rate must be > 0");
  if (grid_size < 2 || (grid_size & (grid_size - 1)) != 0)
    throw ConfigError("grid_size must be a power of two >= 2");
  if (grid_channels < 1) throw ConfigError("grid_channels must be >= 1");
}

ProbMap infer_prior(const PriorModel& model, const KeypointSet& kp) { return model.infer(kp); }

PriorModel train_prior(const std::vector<std::pair<KeypointSet, HardMask>>& pairs,
                       const PriorTrainConfig& cfg, int resolution,
                       std::vector<double>* history) {
  cfg.validate();
  if (pairs.empty()) throw EmptyDataset("train_prior: no (keypoints, mask) pairs");
  if (resolution % cfg.grid_size != 0)
    throw ConfigError("resolution must be a multiple of grid_size");

  PriorModel model;
  model.net.init(resolution, kNumClasses, cfg.seed, cfg.grid_size, cfg.grid_channels);
  auto params = model.net.params();
  nn::Adam<float> adam(params);
  nn::GradArena<float> grads(params);
  auto rng = make_rng(cfg.seed, "prior-shuffle");

  const int n = static_cast<int>(pairs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  const int b = cfg.batch_size;
  std::vector<PriorNet::Acts> acts(b);
  std::vector<nn::Tensor<float>> probs(b);
  std::vector<nn::GradArena<float>> arenas(b, nn::GradArena<float>(params));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_ce = 0.0;
    long epoch_px = 0;
    for (int start = 0; start < n; start += b) {
      const int bs = std::min(b, n - start);
      nn::parallel_for(bs, [&](int j) {
        const auto& kp = pairs[order[start + j]].first;
        probs[j] = nn::softmax_channels(model.net.forward_logits(kp, acts[j]));
      });
      double ce_sum = 0.0;
      long valid = 0;
      for (int j = 0; j < bs; ++j) {
        const nn::CeSum s = nn::masked_ce_sum(probs[j], pairs[order[start + j]].second);
        ce_sum += s.sum;
        valid += s.count;
      }
      epoch_ce += ce_sum;
      epoch_px += valid;
      nn::parallel_for(bs, [&](int j) {
        arenas[j].zero();
        nn::Tensor<float> glogits(probs[j].c, probs[j].h, probs[j].w);
        if (valid > 0)
          nn::ce_grad_accum(probs[j], pairs[order[start + j]].second,
                            static_cast<float>(1.0 / valid), glogits);
        model.net.backward_from_logits(glogits, acts[j], arenas[j]);
      });
      grads.zero();
      for (int j = 0; j < bs; ++j) grads.add(arenas[j]);
      adam.step(params, grads, static_cast<float>(cfg.learning_rate));
    }
    if (history) history->push_back(epoch_px == 0 ? 0.0 : epoch_ce / epoch_px);
  }
  return model;
}

}  // namespace poseadapt::prior
