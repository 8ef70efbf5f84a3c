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

#include <random>

#include "poseadapt/io/dataset.hpp"
#include "poseadapt/nn/parallel.hpp"
#include "poseadapt/segnet/model.hpp"

namespace poseadapt::seg {

void TrainSchedule::validate() const {
  if (epochs < 1 || iters_per_epoch < 1 || batch_size < 1)
    throw ConfigError("schedule epochs, iters and batch size must be >= 1");
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (decay_factor <= 0.0) throw ConfigError("decay_factor must be > 0");
  for (std::size_t i = 0; i < decay_epochs.size(); ++i) {
    if (decay_epochs[i] >= epochs || decay_epochs[i] < 1)
      throw ConfigError("decay epochs must lie in [1, epochs)");
    if (i > 0 && decay_epochs[i] <= decay_epochs[i - 1])
      throw ConfigError("decay epochs must be strictly increasing");
  }
}

double ce_loss(const ProbMap& pm, const HardMask& ref) {
  if (pm.h != ref.h || pm.w != ref.w)
    throw ShapeMismatch("ce_loss: probmap " + std::to_string(pm.h) + "x" + std::to_string(pm.w) +
                        " vs mask " + std::to_string(ref.h) + "x" + std::to_string(ref.w));
  nn::Tensor<float> t(pm.k, pm.h, pm.w);
  t.v = pm.p;
  const nn::CeSum s = nn::masked_ce_sum(t, ref);
  return s.count == 0 ? 0.0 : s.sum / s.count;
}

SegModel pretrain_source(const Dataset& train, const TrainSchedule& sched,
                         std::vector<EpochLoss>* history) {
  sched.validate();
  if (train.size() == 0) throw EmptyDataset("pretrain_source: empty dataset");
  for (const Sample& s : train.samples)
    if (!s.mask) throw MissingLabels("pretrain_source: sample without mask");

  SegModel model = SegModel::create(train.resolution, sched.seed);
  auto params = model.net.params();
  nn::Adam<float> adam(params);
  nn::GradArena<float> grads(params);
  auto rng = make_rng(sched.seed, "pretrain-batch");
  std::uniform_int_distribution<int> pick(0, train.size() - 1);

  const int b = sched.batch_size;
  std::vector<SegNet::Acts> acts(b);
  std::vector<nn::Tensor<float>> probs(b);
  std::vector<nn::GradArena<float>> arenas(b, nn::GradArena<float>(params));

  for (int epoch = 0; epoch < sched.epochs; ++epoch) {
    const float lr = static_cast<float>(sched.lr_at_epoch(epoch));
    double epoch_loss = 0.0;
    for (int iter = 0; iter < sched.iters_per_epoch; ++iter) {
      std::vector<int> idx(b);
      for (int j = 0; j < b; ++j) idx[j] = pick(rng);

      nn::parallel_for(b, [&](int j) {
        const Sample& s = train.samples[idx[j]];
        model.net.forward_logits(nn::tensor_from_image<float>(s.image), acts[j]);
        probs[j] = nn::softmax_channels(acts[j].logits);
      });
      double ce_sum = 0.0;
      long valid = 0;
      for (int j = 0; j < b; ++j) {
        const nn::CeSum s = nn::masked_ce_sum(probs[j], *train.samples[idx[j]].mask);
        ce_sum += s.sum;
        valid += s.count;
      }
      const double loss = valid == 0 ? 0.0 : ce_sum / valid;
      epoch_loss += loss;

      nn::parallel_for(b, [&](int j) {
        arenas[j].zero();
        nn::Tensor<float> glogits(probs[j].c, probs[j].h, probs[j].w);
        if (valid > 0)
          nn::ce_grad_accum(probs[j], *train.samples[idx[j]].mask,
                            static_cast<float>(1.0 / valid), glogits);
        model.net.backward_from_logits(glogits, acts[j], arenas[j]);
      });
      grads.zero();
      for (int j = 0; j < b; ++j) grads.add(arenas[j]);
      adam.step(params, grads, lr);
    }
    if (history) history->push_back({epoch, epoch_loss / sched.iters_per_epoch});
  }
  return model;
}

}  // namespace poseadapt::seg
