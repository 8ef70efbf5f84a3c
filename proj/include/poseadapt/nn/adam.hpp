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
#include <cstdint>
#include <vector>

#include "poseadapt/nn/layers.hpp"

namespace poseadapt::nn {

// Per-parameter gradient buffers matching a model's parameter list. Each
// image gets its own arena during batch-parallel training; arenas are then
// reduced in index order so results do not depend on thread count.
template <typename T>
struct GradArena {
  std::vector<std::vector<T>> g;

  explicit GradArena(const std::vector<Param<T>*>& params) {
    g.reserve(params.size());
    for (const auto* p : params) g.emplace_back(p->size(), T(0));
  }
  void zero() {
    for (auto& v : g) std::fill(v.begin(), v.end(), T(0));
  }
  void add(const GradArena& other) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g[i].size(); ++j) g[i][j] += other.g[i][j];
  }
  void scale(T s) {
    for (auto& v : g)
      for (auto& x : v) x *= s;
  }
};

// Adaptive-moment gradient descent.
template <typename T>
struct Adam {
  T beta1 = T(0.9), beta2 = T(0.999), eps = T(1e-8);
  std::int64_t t = 0;
  std::vector<std::vector<T>> m, v;

  explicit Adam(const std::vector<Param<T>*>& params) {
    for (const auto* p : params) {
      m.emplace_back(p->size(), T(0));
      v.emplace_back(p->size(), T(0));
    }
  }

  void step(const std::vector<Param<T>*>& params, const GradArena<T>& grads, T lr) {
    ++t;
    const T bc1 = T(1) - std::pow(beta1, static_cast<T>(t));
    const T bc2 = T(1) - std::pow(beta2, static_cast<T>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto& pv = params[i]->val;
      const auto& gv = grads.g[i];
      for (std::size_t j = 0; j < pv.size(); ++j) {
        m[i][j] = beta1 * m[i][j] + (T(1) - beta1) * gv[j];
        v[i][j] = beta2 * v[i][j] + (T(1) - beta2) * gv[j] * gv[j];
        const T mh = m[i][j] / bc1;
        const T vh = v[i][j] / bc2;
        pv[j] -= lr * mh / (std::sqrt(vh) + eps);
      }
    }
  }
};

}  // namespace poseadapt::nn
