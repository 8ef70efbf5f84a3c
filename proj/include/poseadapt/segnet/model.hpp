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
#include <vector>

#include "poseadapt/core/rng.hpp"
#include "poseadapt/nn/adam.hpp"
#include "poseadapt/nn/layers.hpp"
#include "poseadapt/nn/loss.hpp"

namespace poseadapt::seg {

// Encoder-decoder segmentation model: four stride-2 convolution stages
// (16/32/64/128 wide), a symmetric transposed-convolution decoder with
// channel-concat skips, and a 1x1 K-channel head. Per-pixel softmax sits in
// infer(); training works on raw logits.
template <typename T>
struct SegNetT {
  int resolution = 0, k_classes = 0;
  nn::Conv2d<T> enc0, enc1, enc2, enc3;
  nn::Deconv2d<T> dec3, dec2, dec1, dec0;
  nn::Conv2d<T> head;

  void init(int resolution_, int k, std::uint64_t seed) {
    resolution = resolution_;
    k_classes = k;
    auto rng = make_rng(seed, "segnet-init");
    enc0.init(3, 16, 3, 2, 1, rng);
    enc1.init(16, 32, 3, 2, 1, rng);
    enc2.init(32, 64, 3, 2, 1, rng);
    enc3.init(64, 128, 3, 2, 1, rng);
    dec3.init(128, 64, 4, 2, 1, rng);
    dec2.init(64 + 64, 32, 4, 2, 1, rng);
    dec1.init(32 + 32, 16, 4, 2, 1, rng);
    dec0.init(16 + 16, 16, 4, 2, 1, rng);
    head.init(16, k, 1, 1, 0, rng, 0.1);  // small head keeps initial output near uniform
  }

  std::vector<nn::Param<T>*> params() {
    return {&enc0.w, &enc0.b, &enc1.w, &enc1.b, &enc2.w, &enc2.b, &enc3.w, &enc3.b,
            &dec3.w, &dec3.b, &dec2.w, &dec2.b, &dec1.w, &dec1.b, &dec0.w, &dec0.b,
            &head.w, &head.b};
  }
  std::vector<const nn::Param<T>*> params() const {
    auto* self = const_cast<SegNetT*>(this);
    std::vector<const nn::Param<T>*> out;
    for (auto* p : self->params()) out.push_back(p);
    return out;
  }

  struct Acts {
    nn::Tensor<T> x0, e0, e1, e2, e3, d3, cat3, d2, cat2, d1, cat1, d0, logits;
  };

  const nn::Tensor<T>& forward_logits(const nn::Tensor<T>& img, Acts& a) const {
    a.x0 = img;
    a.e0 = enc0.forward(a.x0);
    nn::relu_inplace(a.e0);
    a.e1 = enc1.forward(a.e0);
    nn::relu_inplace(a.e1);
    a.e2 = enc2.forward(a.e1);
    nn::relu_inplace(a.e2);
    a.e3 = enc3.forward(a.e2);
    nn::relu_inplace(a.e3);
    a.d3 = dec3.forward(a.e3);
    nn::relu_inplace(a.d3);
    a.cat3 = nn::concat_channels(a.d3, a.e2);
    a.d2 = dec2.forward(a.cat3);
    nn::relu_inplace(a.d2);
    a.cat2 = nn::concat_channels(a.d2, a.e1);
    a.d1 = dec1.forward(a.cat2);
    nn::relu_inplace(a.d1);
    a.cat1 = nn::concat_channels(a.d1, a.e0);
    a.d0 = dec0.forward(a.cat1);
    nn::relu_inplace(a.d0);
    a.logits = head.forward(a.d0);
    return a.logits;
  }

  // Backprop from d(loss)/d(logits); accumulates parameter grads into `g`
  // (same index order as params()).
  void backward_from_logits(const nn::Tensor<T>& glogits, const Acts& a,
                            nn::GradArena<T>& g) const {
    auto gw = [&](int i) { return g.g[i].data(); };
    nn::Tensor<T> gd0 = head.backward(a.d0, glogits, gw(16), gw(17));
    nn::relu_backward_inplace(gd0, a.d0);
    nn::Tensor<T> gcat1 = dec0.backward(a.cat1, gd0, gw(14), gw(15));
    nn::Tensor<T> gd1, ge0_skip;
    nn::split_channels(gcat1, gd1, ge0_skip, a.d1.c);
    nn::relu_backward_inplace(gd1, a.d1);
    nn::Tensor<T> gcat2 = dec1.backward(a.cat2, gd1, gw(12), gw(13));
    nn::Tensor<T> gd2, ge1_skip;
    nn::split_channels(gcat2, gd2, ge1_skip, a.d2.c);
    nn::relu_backward_inplace(gd2, a.d2);
    nn::Tensor<T> gcat3 = dec2.backward(a.cat3, gd2, gw(10), gw(11));
    nn::Tensor<T> gd3, ge2_skip;
    nn::split_channels(gcat3, gd3, ge2_skip, a.d3.c);
    nn::relu_backward_inplace(gd3, a.d3);
    nn::Tensor<T> ge3 = dec3.backward(a.e3, gd3, gw(8), gw(9));
    nn::relu_backward_inplace(ge3, a.e3);
    nn::Tensor<T> ge2 = enc3.backward(a.e2, ge3, gw(6), gw(7));
    nn::add_inplace(ge2, ge2_skip);
    nn::relu_backward_inplace(ge2, a.e2);
    nn::Tensor<T> ge1 = enc2.backward(a.e1, ge2, gw(4), gw(5));
    nn::add_inplace(ge1, ge1_skip);
    nn::relu_backward_inplace(ge1, a.e1);
    nn::Tensor<T> ge0 = enc1.backward(a.e0, ge1, gw(2), gw(3));
    nn::add_inplace(ge0, ge0_skip);
    nn::relu_backward_inplace(ge0, a.e0);
    enc0.backward(a.x0, ge0, gw(0), gw(1));
  }
};

using SegNet = SegNetT<float>;

/// The segmentation model F. Output of infer() is always a valid ProbMap.
struct SegModel {
  SegNet net;

  static SegModel create(int resolution, std::uint64_t seed, int k = kNumClasses) {
    SegModel m;
    m.net.init(resolution, k, seed);
    return m;
  }

  ProbMap infer(const Image& img) const {
    SegNet::Acts a;
    const auto& logits = net.forward_logits(nn::tensor_from_image<float>(img), a);
    return nn::probmap_from_tensor(nn::softmax_channels(logits));
  }
};

/// Training schedule. Defaults mirror the reference setup; the desk preset
/// in io/presets shrinks epochs/iterations for CPU runs.
struct TrainSchedule {
  int epochs = 30;
  int iters_per_epoch = 100;
  int batch_size = 32;
  double learning_rate = 1e-4;
  std::vector<int> decay_epochs = {5, 20};  // lr /= decay_factor at each
  double decay_factor = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
  double lr_at_epoch(int epoch) const {
    double lr = learning_rate;
    for (int d : decay_epochs)
      if (epoch >= d) lr /= decay_factor;
    return lr;
  }
};

/// Mean negative log-probability of `ref` labels over non-ignore pixels;
/// 0 when every pixel is ignored. Probabilities are clamped at 1e-7.
double ce_loss(const ProbMap& pm, const HardMask& ref);

struct EpochLoss {
  int epoch = 0;
  double loss = 0.0;
};

}  // namespace poseadapt::seg

namespace poseadapt {
struct Dataset;  // io/dataset.hpp
}

namespace poseadapt::seg {

/// Supervised source pretraining: minimizes the per-pixel cross-entropy of
/// the model against ground-truth masks. Every sample must carry a mask.
/// Deterministic given sched.seed; per-epoch mean loss appended to *history.
SegModel pretrain_source(const Dataset& train, const TrainSchedule& sched,
                         std::vector<EpochLoss>* history = nullptr);

}  // namespace poseadapt::seg
