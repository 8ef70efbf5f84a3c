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

#include "poseadapt/io/runconfig.hpp"

namespace poseadapt::io {

namespace {

Json terms_to_json(const adapt::LossTerms& t) {
  Json arr = Json::array();
  if (t.source) arr.push_back("source");
  if (t.plain_pseudo) arr.push_back("plain_pseudo");
  if (t.prior_consistency) arr.push_back("prior");
  if (t.reliable) arr.push_back("reliable");
  return arr;
}

adapt::LossTerms terms_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(ctx + ": expected an array of term names");
  adapt::LossTerms t{false, false, false, false};
  for (const auto& e : j) {
    const std::string name = e.get<std::string>();
    if (name == "source")
      t.source = true;
    else if (name == "plain_pseudo")
      t.plain_pseudo = true;
    else if (name == "prior")
      t.prior_consistency = true;
    else if (name == "reliable")
      t.reliable = true;
    else
      throw ConfigError(ctx + ": unknown loss term '" + name + "'");
  }
  return t;
}

Json adapt_to_json(const adapt::AdaptConfig& a) {
  return Json{{"selection", selection_to_json(a.selection)},
              {"eta", a.eta},
              {"schedule", schedule_to_json(a.schedule)},
              {"source_free", a.source_free},
              {"pose_corruption", corruption_to_json(a.pose_corruption)},
              {"terms", terms_to_json(a.terms)}};
}

adapt::AdaptConfig adapt_from_json(const Json& j, const std::string& ctx) {
  adapt::AdaptConfig a;
  StrictObject o(j, ctx);
  if (const Json* s = o.optional_object("selection"))
    a.selection = selection_from_json(*s, ctx + ".selection");
  o.optional("eta", a.eta);
  if (const Json* s = o.optional_object("schedule"))
    a.schedule = schedule_from_json(*s, ctx + ".schedule");
  o.optional("source_free", a.source_free);
  if (const Json* c = o.optional_object("pose_corruption"))
    a.pose_corruption = corruption_from_json(*c, ctx + ".pose_corruption");
  if (const Json* t = o.optional_object("terms")) a.terms = terms_from_json(*t, ctx + ".terms");
  if (a.source_free) a.terms.source = false;
  o.finish();
  return a;
}

Json data_to_json(const DataConfig& d) {
  return Json{{"n_source", d.n_source},
              {"n_target", d.n_target},
              {"n_target_eval", d.n_target_eval},
              {"n_source_eval", d.n_source_eval},
              {"source_domain", domain_to_json(d.source_domain)},
              {"target_domain", domain_to_json(d.target_domain)},
              {"dir", d.dir}};
}

DataConfig data_from_json(const Json& j, const std::string& ctx) {
  DataConfig d;
  StrictObject o(j, ctx);
  o.optional("n_source", d.n_source);
  o.optional("n_target", d.n_target);
  o.optional("n_target_eval", d.n_target_eval);
  o.optional("n_source_eval", d.n_source_eval);
  if (const Json* s = o.optional_object("source_domain"))
    d.source_domain = domain_from_json(*s, ctx + ".source_domain");
  if (const Json* t = o.optional_object("target_domain"))
    d.target_domain = domain_from_json(*t, ctx + ".target_domain");
  o.optional("dir", d.dir);
  o.finish();
  return d;
}

}  // namespace

void RunConfig::validate() const {
  if (schema_version != kConfigSchemaVersion)
    throw ConfigError("unsupported config schema_version " + std::to_string(schema_version));
  if (run_name.empty() || run_name.find('/') != std::string::npos)
    throw ConfigError("run_name must be a non-empty name without '/'");
  if (resolution < 32 || resolution % 16 != 0)
    throw ConfigError("resolution must be >= 32 and divisible by 16");
  if (data.n_source < 1 || data.n_target < 1 || data.n_target_eval < 1 || data.n_source_eval < 1)
    throw ConfigError("dataset sizes must be >= 1");
  data.source_domain.validate();
  data.target_domain.validate();
  prior.validate();
  pretrain.validate();
  adapt.validate();
}

bool RunConfig::operator==(const RunConfig& o) const {
  return runconfig_to_json(*this) == runconfig_to_json(o);
}

RunConfig RunConfig::desk_default() {
  RunConfig cfg;
  cfg.pretrain.epochs = 15;
  cfg.pretrain.iters_per_epoch = 50;
  cfg.pretrain.batch_size = 16;
  cfg.pretrain.decay_epochs = {5, 10};
  cfg.adapt.schedule = cfg.pretrain;
  cfg.prior.epochs = 20;
  cfg.prior.learning_rate = 3e-4;
  cfg.adapt.pose_corruption = pose::adapted_pose_preset();
  return cfg;
}

Json runconfig_to_json(const RunConfig& cfg) {
  return Json{{"schema_version", cfg.schema_version},
              {"run_name", cfg.run_name},
              {"out_dir", cfg.out_dir},
              {"seed", cfg.seed},
              {"resolution", cfg.resolution},
              {"data", data_to_json(cfg.data)},
              {"prior", prior_cfg_to_json(cfg.prior)},
              {"pretrain", schedule_to_json(cfg.pretrain)},
              {"adapt", adapt_to_json(cfg.adapt)},
              {"paths",
               Json{{"init_checkpoint", cfg.paths.init_checkpoint},
                    {"prior_checkpoint", cfg.paths.prior_checkpoint}}}};
}

RunConfig runconfig_from_json(const Json& j) {
  RunConfig cfg;
  StrictObject o(j, "config");
  o.require("schema_version", cfg.schema_version);
  o.optional("run_name", cfg.run_name);
  o.optional("out_dir", cfg.out_dir);
  o.optional("seed", cfg.seed);
  o.optional("resolution", cfg.resolution);
  if (const Json* d = o.optional_object("data")) cfg.data = data_from_json(*d, "config.data");
  if (const Json* p = o.optional_object("prior"))
    cfg.prior = prior_cfg_from_json(*p, "config.prior");
  if (const Json* p = o.optional_object("pretrain"))
    cfg.pretrain = schedule_from_json(*p, "config.pretrain");
  if (const Json* a = o.optional_object("adapt")) cfg.adapt = adapt_from_json(*a, "config.adapt");
  if (const Json* p = o.optional_object("paths")) {
    StrictObject po(*p, "config.paths");
    po.optional("init_checkpoint", cfg.paths.init_checkpoint);
    po.optional("prior_checkpoint", cfg.paths.prior_checkpoint);
    po.finish();
  }
  o.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_runconfig(const std::string& path) {
  return runconfig_from_json(load_json_file(path));
}

void save_runconfig(const std::string& path, const RunConfig& cfg) {
  write_json_file(path, runconfig_to_json(cfg));
}

}  // namespace poseadapt::io
