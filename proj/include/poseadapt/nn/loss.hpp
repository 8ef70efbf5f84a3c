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

#include <cmath>
#include <cstddef>
#include <vector>

#include "poseadapt/core/types.hpp"
#include "poseadapt/nn/tensor.hpp"

namespace poseadapt::nn {

// Probability floor before log(); keeps the loss finite for saturated outputs.
inline constexpr double kProbClamp = 1e-7;

// Numerically stable per-pixel softmax across channels, computed plane-wise.
template <typename T>
Tensor<T> softmax_channels(const Tensor<T>& logits) {
  const int n = logits.plane(), k = logits.c;
  Tensor<T> p(k, logits.h, logits.w);
  std::vector<T> mx(n, logits.v[0]), acc(n, T(0));
  for (int c = 0; c < k; ++c) {
    const T* lp = logits.data() + std::size_t(c) * n;
    for (int i = 0; i < n; ++i) mx[i] = std::max(mx[i], lp[i]);
  }
  for (int c = 0; c < k; ++c) {
    const T* lp = logits.data() + std::size_t(c) * n;
    T* pp = p.data() + std::size_t(c) * n;
    for (int i = 0; i < n; ++i) {
      pp[i] = std::exp(lp[i] - mx[i]);
      acc[i] += pp[i];
    }
  }
  for (int c = 0; c < k; ++c) {
    T* pp = p.data() + std::size_t(c) * n;
    for (int i = 0; i < n; ++i) pp[i] /= acc[i];
  }
  return p;
}

struct CeSum {
  double sum = 0.0;  // accumulated -log p over valid pixels
  long count = 0;    // valid (non-ignore) pixels
};

// Sum of clamped negative log-likelihoods over non-ignore pixels.
template <typename T>
CeSum masked_ce_sum(const Tensor<T>& probs, const HardMask& ref) {
  CeSum s;
  const int n = probs.plane();
  for (int i = 0; i < n; ++i) {
    const std::uint8_t lbl = ref.m[i];
    if (lbl >= probs.c) continue;  // ignore
    const double p = std::max(static_cast<double>(probs.v[std::size_t(lbl) * n + i]), kProbClamp);
    s.sum += -std::log(p);
    ++s.count;
  }
  return s;
}

// d(mean CE)/d(logits) contribution for one image: scale * (p - onehot) on
// valid pixels. `scale` carries the loss weight divided by the total valid
// count of the term (which may span several images).
template <typename T>
void ce_grad_accum(const Tensor<T>& probs, const HardMask& ref, T scale, Tensor<T>& glogits) {
  const int n = probs.plane();
  for (int c = 0; c < probs.c; ++c) {
    const T* pp = probs.data() + std::size_t(c) * n;
    T* gp = glogits.data() + std::size_t(c) * n;
    for (int i = 0; i < n; ++i) {
      const std::uint8_t lbl = ref.m[i];
      if (lbl >= probs.c) continue;
      gp[i] += scale * (pp[i] - (lbl == c ? T(1) : T(0)));
    }
  }
}

// ProbMap shares the channel-planar layout, so the float kernels apply as is.
inline CeSum masked_ce_sum(const ProbMap& probs, const HardMask& ref) {
  CeSum s;
  const int n = probs.plane();
  for (int i = 0; i < n; ++i) {
    const std::uint8_t lbl = ref.m[i];
    if (lbl >= probs.k) continue;
    const double p = std::max(static_cast<double>(probs.p[std::size_t(lbl) * n + i]), kProbClamp);
    s.sum += -std::log(p);
    ++s.count;
  }
  return s;
}

inline void ce_grad_accum(const ProbMap& probs, const HardMask& ref, float scale,
                          Tensor<float>& glogits) {
  const int n = probs.plane();
  for (int c = 0; c < probs.k; ++c) {
    const float* pp = probs.p.data() + std::size_t(c) * n;
    float* gp = glogits.data() + std::size_t(c) * n;
    for (int i = 0; i < n; ++i) {
      const std::uint8_t lbl = ref.m[i];
      if (lbl >= probs.k) continue;
      gp[i] += scale * (pp[i] - (lbl == c ? 1.f : 0.f));
    }
  }
}

inline ProbMap probmap_move(Tensor<float>&& t) {
  ProbMap pm;
  pm.k = t.c;
  pm.h = t.h;
  pm.w = t.w;
  pm.p = std::move(t.v);
  return pm;
}

}  // namespace poseadapt::nn
