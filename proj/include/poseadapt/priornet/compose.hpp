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

#include "poseadapt/poseprov/provider.hpp"
#include "poseadapt/priornet/model.hpp"

namespace poseadapt::prior {

/// Anatomical pseudo-label for a target image: hard argmax of G applied to
/// the provider's keypoint estimate. When the provider drops every joint
/// there is no anatomical evidence at all, so the mask is all-ignore.
HardMask prior_pseudo(const PriorModel& model, const pose::PoseProvider& provider,
                      const Sample& image);

}  // namespace poseadapt::prior
