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

#include "poseadapt/metrics/eval.hpp"

#include "poseadapt/nn/parallel.hpp"

namespace poseadapt::metrics {

IoUReport evaluate_segmentation(const seg::SegModel& model, const Dataset& data) {
  if (data.size() == 0) throw EmptyDataset("evaluate_segmentation: empty dataset");
  const int n = data.size();
  for (const Sample& s : data.samples)
    if (!s.mask) throw MissingLabels("evaluate_segmentation: sample without mask");
  std::vector<ConfusionAccumulator> per_image(n);
  nn::parallel_for(n, [&](int i) {
    const Sample& s = data.samples[i];
    accumulate(per_image[i], argmax_mask(model.infer(s.image)), *s.mask);
  });
  ConfusionAccumulator total;
  for (const auto& acc : per_image) total.merge(acc);
  return report(total);
}

}  // namespace poseadapt::metrics
