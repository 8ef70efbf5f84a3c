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

#include <algorithm>
#include <cstddef>
#include <vector>

#include "poseadapt/core/types.hpp"

namespace poseadapt::nn {

// Channel-planar [c][h][w] tensor. A channel plane is contiguous, so the
// whole tensor maps onto a column-major (h*w) x c matrix without copies.
template <typename T>
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<T> v;

  Tensor() = default;
  Tensor(int c_, int h_, int w_) : c(c_), h(h_), w(w_), v(std::size_t(c_) * h_ * w_, T(0)) {}

  int plane() const { return h * w; }
  std::size_t size() const { return v.size(); }
  T* data() { return v.data(); }
  const T* data() const { return v.data(); }
  T& at(int ch, int y, int x) { return v[(std::size_t(ch) * h + y) * w + x]; }
  T at(int ch, int y, int x) const { return v[(std::size_t(ch) * h + y) * w + x]; }
  void zero() { std::fill(v.begin(), v.end(), T(0)); }
};

template <typename T>
Tensor<T> concat_channels(const Tensor<T>& a, const Tensor<T>& b) {
  Tensor<T> out(a.c + b.c, a.h, a.w);
  std::copy(a.v.begin(), a.v.end(), out.v.begin());
  std::copy(b.v.begin(), b.v.end(), out.v.begin() + a.v.size());
  return out;
}

template <typename T>
void split_channels(const Tensor<T>& cat, Tensor<T>& a, Tensor<T>& b, int ca) {
  a = Tensor<T>(ca, cat.h, cat.w);
  b = Tensor<T>(cat.c - ca, cat.h, cat.w);
  std::copy(cat.v.begin(), cat.v.begin() + a.v.size(), a.v.begin());
  std::copy(cat.v.begin() + a.v.size(), cat.v.end(), b.v.begin());
}

template <typename T>
void relu_inplace(Tensor<T>& t) {
  for (auto& x : t.v) x = x > T(0) ? x : T(0);
}

// Grad through relu given the post-activation values.
template <typename T>
void relu_backward_inplace(Tensor<T>& grad, const Tensor<T>& act) {
  for (std::size_t i = 0; i < grad.v.size(); ++i)
    if (act.v[i] <= T(0)) grad.v[i] = T(0);
}

template <typename T>
void add_inplace(Tensor<T>& dst, const Tensor<T>& src) {
  for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] += src.v[i];
}

template <typename T>
Tensor<T> tensor_from_image(const Image& img) {
  Tensor<T> t(3, img.h, img.w);
  for (std::size_t i = 0; i < img.chw.size(); ++i) t.v[i] = static_cast<T>(img.chw[i]);
  return t;
}

inline ProbMap probmap_from_tensor(const Tensor<float>& t) {
  ProbMap pm(t.c, t.h, t.w);
  pm.p = t.v;
  return pm;
}

}  // namespace poseadapt::nn
