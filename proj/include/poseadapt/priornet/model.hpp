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
#include <utility>
#include <vector>

#include "poseadapt/core/rng.hpp"
#include "poseadapt/nn/adam.hpp"
#include "poseadapt/nn/layers.hpp"
#include "poseadapt/nn/loss.hpp"

namespace poseadapt::prior {

// Keypoints-to-segmentation decoder: a projection of the flattened joint
// coordinates onto a low-resolution feature grid, then stride-2 transposed
// convolutions doubling resolution up to the output size, ending in K
// channels. It never sees an RGB image, which is what makes it usable across
// domains. Invisible joints enter as (0, 0) with a zeroed visibility flag.
template <typename T>
struct PriorNetT {
  int resolution = 0, k_classes = 0, grid = 8, grid_channels = 64;
  nn::Linear<T> proj;
  std::vector<nn::Deconv2d<T>> ups;

  static constexpr int kInputDim = kNumJoints * 3;  // (x, y, visible) per joint

  void init(int resolution_, int k, std::uint64_t seed, int grid_ = 8, int grid_channels_ = 64) {
    resolution = resolution_;
    k_classes = k;
    grid = grid_;
    grid_channels = grid_channels_;
    auto rng = make_rng(seed, "priornet-init");
    proj.init(kInputDim, grid_channels * grid * grid, rng);
    ups.clear();
    int stages = 0;
    for (int r = grid; r < resolution; r *= 2) ++stages;
    int cin = grid_channels;
    for (int s = 0; s < stages; ++s) {
      const bool last = s + 1 == stages;
      const int cout = last ? k : std::max(16, cin / 2);
      ups.emplace_back();
      ups.back().init(cin, cout, 4, 2, 1, rng, last ? 0.1 : 1.0);
      cin = cout;
    }
  }

  std::vector<nn::Param<T>*> params() {
    std::vector<nn::Param<T>*> out{&proj.w, &proj.b};
    for (auto& u : ups) {
      out.push_back(&u.w);
      out.push_back(&u.b);
    }
    return out;
  }

  static std::vector<T> encode(const KeypointSet& kp) {
    std::vector<T> v(kInputDim, T(0));
    for (int j = 0; j < kNumJoints; ++j) {
      if (!kp.visible[j]) continue;
      v[3 * j + 0] = static_cast<T>(kp.x[j]);
      v[3 * j + 1] = static_cast<T>(kp.y[j]);
      v[3 * j + 2] = T(1);
    }
    return v;
  }

  struct Acts {
    std::vector<T> in, z;
    nn::Tensor<T> grid_act;
    std::vector<nn::Tensor<T>> u;  // per-stage outputs; last is the logits
  };

  const nn::Tensor<T>& forward_logits(const KeypointSet& kp, Acts& a) const {
    a.in = encode(kp);
    a.z = proj.forward(a.in);
    a.grid_act = nn::Tensor<T>(grid_channels, grid, grid);
    a.grid_act.v = a.z;
    nn::relu_inplace(a.grid_act);
    a.u.clear();
    a.u.reserve(ups.size());
    const nn::Tensor<T>* cur = &a.grid_act;
    for (std::size_t s = 0; s < ups.size(); ++s) {
      a.u.push_back(ups[s].forward(*cur));
      if (s + 1 < ups.size()) nn::relu_inplace(a.u.back());
      cur = &a.u.back();
    }
    return a.u.back();
  }

  void backward_from_logits(const nn::Tensor<T>& glogits, const Acts& a,
                            nn::GradArena<T>& g) const {
    nn::Tensor<T> grad = glogits;
    for (int s = static_cast<int>(ups.size()) - 1; s >= 0; --s) {
      const nn::Tensor<T>& input = s == 0 ? a.grid_act : a.u[s - 1];
      if (s + 1 < static_cast<int>(ups.size())) nn::relu_backward_inplace(grad, a.u[s]);
      grad = ups[s].backward(input, grad, g.g[2 + 2 * s].data(), g.g[2 + 2 * s + 1].data());
    }
    nn::relu_backward_inplace(grad, a.grid_act);
    proj.backward(a.in, grad.v, g.g[0].data(), g.g[1].data());
  }
};

using PriorNet = PriorNetT<float>;

/// The anatomical prior G: sparse joints in, dense part probabilities out.
struct PriorModel {
  PriorNet net;

  ProbMap infer(const KeypointSet& kp) const {
    PriorNet::Acts a;
    const auto& logits = net.forward_logits(kp, a);
    return nn::probmap_from_tensor(nn::softmax_channels(logits));
  }
};

struct PriorTrainConfig {
  int epochs = 200;
  int batch_size = 32;
  double learning_rate = 1e-4;
  int grid_size = 8;
  int grid_channels = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic inference: G(kp), a valid ProbMap for any keypoint set.
ProbMap infer_prior(const PriorModel& model, const KeypointSet& kp);

/// Supervised training of G on (keypoints, mask) pairs — no images anywhere
/// in the signature. Per-epoch mean cross-entropy appended to *history.
PriorModel train_prior(const std::vector<std::pair<KeypointSet, HardMask>>& pairs,
                       const PriorTrainConfig& cfg, int resolution,
                       std::vector<double>* history = nullptr);

}  // namespace poseadapt::prior
