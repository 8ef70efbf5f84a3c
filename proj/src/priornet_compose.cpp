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

#include "poseadapt/priornet/compose.hpp"

namespace poseadapt::prior {

HardMask prior_pseudo(const PriorModel& model, const pose::PoseProvider& provider,
                      const Sample& image) {
  const KeypointSet kp = provider.estimate(image);
  if (kp.num_visible() == 0)
    return HardMask(model.net.resolution, model.net.resolution, kIgnoreLabel);
  return argmax_mask(model.infer(kp));
}

}  // namespace poseadapt::prior
