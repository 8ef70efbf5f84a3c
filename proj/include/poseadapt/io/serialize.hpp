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

#include <string>

#include "poseadapt/adapt/adapt.hpp"
#include "poseadapt/datagen/figure.hpp"
#include "poseadapt/io/jsonconv.hpp"
#include "poseadapt/poseprov/provider.hpp"
#include "poseadapt/priornet/model.hpp"
#include "poseadapt/pseudo/selection.hpp"
#include "poseadapt/segnet/model.hpp"

namespace poseadapt::io {

// JSON converters shared by the dataset manifest and the run config. Parsing
// is strict: unknown keys raise ConfigError; absent keys keep defaults.

Json domain_to_json(const datagen::DomainSpec& d);
datagen::DomainSpec domain_from_json(const Json& j, const std::string& ctx);

Json corruption_to_json(const pose::PoseCorruption& c);
pose::PoseCorruption corruption_from_json(const Json& j, const std::string& ctx);

Json selection_to_json(const pseudo::SelectionConfig& s);
pseudo::SelectionConfig selection_from_json(const Json& j, const std::string& ctx);

Json schedule_to_json(const seg::TrainSchedule& s);
seg::TrainSchedule schedule_from_json(const Json& j, const std::string& ctx);

Json prior_cfg_to_json(const prior::PriorTrainConfig& c);
prior::PriorTrainConfig prior_cfg_from_json(const Json& j, const std::string& ctx);

/// One adaptation epoch as a self-describing metrics-log line. Absent
/// classes serialize as null.
Json metrics_record_to_json(const adapt::MetricsRecord& r);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace poseadapt::io
