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

#include "poseadapt/core/types.hpp"

#include <cmath>
#include <cstdio>

namespace poseadapt {

void validate_probmap(const ProbMap& pm) {
  const int n = pm.plane();
  float worst_dev = 0.f;
  int worst_px = -1;
  bool negative = false;
  for (int i = 0; i < n; ++i) {
    float s = 0.f;
    for (int c = 0; c < pm.k; ++c) {
      const float v = pm.p[std::size_t(c) * n + i];
      if (v < 0.f) negative = true;
      s += v;
    }
    const float dev = std::fabs(s - 1.f);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst_px = i;
    }
  }
  if (worst_dev > 1e-5f || negative) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "pixel (%d,%d) sums to %.7f%s",
                  worst_px >= 0 ? worst_px / pm.w : -1, worst_px >= 0 ? worst_px % pm.w : -1,
                  1.0 + worst_dev, negative ? " (negative entry present)" : "");
    throw NormalizationError(buf);
  }
}

HardMask argmax_mask(const ProbMap& pm) {
  HardMask out(pm.h, pm.w);
  const int n = pm.plane();
  for (int i = 0; i < n; ++i) {
    int best = 0;
    float bv = pm.p[i];
    for (int c = 1; c < pm.k; ++c) {
      const float v = pm.p[std::size_t(c) * n + i];
      if (v > bv) {  // strict: ties keep the lowest class index
        bv = v;
        best = c;
      }
    }
    out.m[i] = static_cast<std::uint8_t>(best);
  }
  return out;
}

ProbMap one_hot(const HardMask& mask, int k) {
  ProbMap pm(k, mask.h, mask.w);
  const int n = mask.h * mask.w;
  for (int i = 0; i < n; ++i) {
    const std::uint8_t lbl = mask.m[i];
    if (lbl < k) pm.p[std::size_t(lbl) * n + i] = 1.f;
  }
  return pm;
}

}  // namespace poseadapt
