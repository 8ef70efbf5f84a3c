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

#include "poseadapt/io/serialize.hpp"

#include <fstream>

namespace poseadapt::io {

Json domain_to_json(const datagen::DomainSpec& d) {
  return Json{{"blur_sigma", d.blur_sigma},
              {"color_shift", d.color_shift},
              {"noise_std", d.noise_std},
              {"background_mode",
               d.background_mode == datagen::BackgroundMode::kFlat ? "flat" : "textured"},
              {"pose_distribution_shift", d.pose_distribution_shift},
              {"scale_range", d.scale_range}};
}

datagen::DomainSpec domain_from_json(const Json& j, const std::string& ctx) {
  datagen::DomainSpec d;
  StrictObject o(j, ctx);
  o.optional("blur_sigma", d.blur_sigma);
  o.optional("color_shift", d.color_shift);
  o.optional("noise_std", d.noise_std);
  std::string mode = d.background_mode == datagen::BackgroundMode::kFlat ? "flat" : "textured";
  o.optional("background_mode", mode);
  if (mode == "flat")
    d.background_mode = datagen::BackgroundMode::kFlat;
  else if (mode == "textured")
    d.background_mode = datagen::BackgroundMode::kTextured;
  else
    throw ConfigError(ctx + ".background_mode: expected 'flat' or 'textured'");
  o.optional("pose_distribution_shift", d.pose_distribution_shift);
  o.optional("scale_range", d.scale_range);
  o.finish();
  d.validate();
  return d;
}

Json corruption_to_json(const pose::PoseCorruption& c) {
  return Json{{"jitter_std", c.jitter_std},
              {"miss_prob", c.miss_prob},
              {"swap_prob", c.swap_prob},
              {"seed", c.seed}};
}

pose::PoseCorruption corruption_from_json(const Json& j, const std::string& ctx) {
  pose::PoseCorruption c;
  if (j.is_string()) {  // named presets
    const std::string name = j.get<std::string>();
    if (name == "adapted") return pose::adapted_pose_preset();
    if (name == "unadapted") return pose::unadapted_pose_preset();
    if (name == "oracle") return pose::PoseCorruption{};
    throw ConfigError(ctx + ": unknown pose corruption preset '" + name + "'");
  }
  StrictObject o(j, ctx);
  o.optional("jitter_std", c.jitter_std);
  o.optional("miss_prob", c.miss_prob);
  o.optional("swap_prob", c.swap_prob);
  o.optional("seed", c.seed);
  o.finish();
  c.validate();
  return c;
}

Json selection_to_json(const pseudo::SelectionConfig& s) {
  return Json{{"tau", s.tau}, {"gamma", s.gamma}, {"alpha", s.alpha}, {"beta", s.beta}};
}

pseudo::SelectionConfig selection_from_json(const Json& j, const std::string& ctx) {
  pseudo::SelectionConfig s;
  StrictObject o(j, ctx);
  o.optional("tau", s.tau);
  o.optional("gamma", s.gamma);
  o.optional("alpha", s.alpha);
  o.optional("beta", s.beta);
  o.finish();
  s.validate();
  return s;
}

Json schedule_to_json(const seg::TrainSchedule& s) {
  return Json{{"epochs", s.epochs},
              {"iters_per_epoch", s.iters_per_epoch},
              {"batch_size", s.batch_size},
              {"learning_rate", s.learning_rate},
              {"decay_epochs", s.decay_epochs},
              {"decay_factor", s.decay_factor},
              {"seed", s.seed}};
}

seg::TrainSchedule schedule_from_json(const Json& j, const std::string& ctx) {
  seg::TrainSchedule s;
  StrictObject o(j, ctx);
  o.optional("epochs", s.epochs);
  o.optional("iters_per_epoch", s.iters_per_epoch);
  o.optional("batch_size", s.batch_size);
  o.optional("learning_rate", s.learning_rate);
  o.optional("decay_epochs", s.decay_epochs);
  o.optional("decay_factor", s.decay_factor);
  o.optional("seed", s.seed);
  o.finish();
  s.validate();
  return s;
}

Json prior_cfg_to_json(const prior::PriorTrainConfig& c) {
  return Json{{"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"learning_rate", c.learning_rate},
              {"grid_size", c.grid_size},
              {"grid_channels", c.grid_channels},
              {"seed", c.seed}};
}

prior::PriorTrainConfig prior_cfg_from_json(const Json& j, const std::string& ctx) {
  prior::PriorTrainConfig c;
  StrictObject o(j, ctx);
  o.optional("epochs", c.epochs);
  o.optional("batch_size", c.batch_size);
  o.optional("learning_rate", c.learning_rate);
  o.optional("grid_size", c.grid_size);
  o.optional("grid_channels", c.grid_channels);
  o.optional("seed", c.seed);
  o.finish();
  c.validate();
  return c;
}

Json metrics_record_to_json(const adapt::MetricsRecord& r) {
  Json per_class = Json::array();
  for (double v : r.per_class) {
    if (v < 0.0)
      per_class.push_back(nullptr);
    else
      per_class.push_back(v);
  }
  return Json{{"epoch", r.epoch},
              {"loss_s", r.loss_s},
              {"loss_pl", r.loss_pl},
              {"loss_p2s", r.loss_p2s},
              {"loss_rpl", r.loss_rpl},
              {"loss_total", r.loss_total},
              {"lambda_mean", r.lambda_mean},
              {"coverage", r.coverage},
              {"target_miou", r.target_miou},
              {"per_class", per_class}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace poseadapt::io
