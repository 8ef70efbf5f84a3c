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

#include "poseadapt/io/dataset.hpp"
#include "poseadapt/metrics/iou.hpp"
#include "poseadapt/segnet/model.hpp"

namespace poseadapt::metrics {

/// Dataset-level evaluation: accumulated counts across all samples (not a
/// mean of per-image scores). Every sample needs a ground-truth mask.
IoUReport evaluate_segmentation(const seg::SegModel& model, const Dataset& data);

}  // namespace poseadapt::metrics
