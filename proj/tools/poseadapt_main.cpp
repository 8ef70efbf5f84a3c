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

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "poseadapt/io/checkpoint.hpp"
#include "poseadapt/io/plot.hpp"
#include "poseadapt/io/rundir.hpp"
#include "poseadapt/io/serialize.hpp"
#include "poseadapt/nn/parallel.hpp"
#include "poseadapt/pipeline.hpp"

namespace fs = std::filesystem;
using namespace poseadapt;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string run_name, out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool force = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_config = true) {
  if (with_config)
    cmd->add_option("--config", o.config_path, "run configuration file")->required();
  cmd->add_option("--run-name", o.run_name, "override config run_name");
  cmd->add_option("--out-dir", o.out_dir, "override config out_dir");
  cmd->add_option("--seed", o.seed, "override config seed")->each([&](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_flag("--force", o.force, "overwrite an existing run directory");
  cmd->add_option("--threads", o.threads, "worker threads (default: min(cores, 4))");
}

io::RunConfig load_config(const CommonOpts& o) {
  io::RunConfig cfg = io::load_runconfig(o.config_path);
  if (!o.run_name.empty()) cfg.run_name = o.run_name;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.seed_set) cfg.seed = o.seed;
  if (o.threads > 0) nn::set_num_threads(o.threads);
  return cfg;
}

std::string data_dir(const io::RunConfig& cfg, const char* split) {
  return (fs::path(cfg.data.dir) / split).string();
}

Dataset require_dataset(const io::RunConfig& cfg, const char* split, io::LoadMode mode) {
  const std::string dir = data_dir(cfg, split);
  if (!fs::exists(fs::path(dir) / "manifest.json"))
    throw IoError("dataset '" + dir + "' not found; run `poseadapt gen-all --config ...` first");
  return io::load_dataset(dir, mode);
}

datagen::DomainSpec resolve_domain(const std::string& name) {
  if (name == "source") return datagen::source_preset();
  if (name == "target") return datagen::target_preset();
  if (fs::exists(name)) return io::domain_from_json(io::load_json_file(name), name);
  throw ConfigError("--domain expects 'source', 'target', or a JSON file path; got '" + name +
                    "'");
}

// Seed windows identical to the in-memory pipeline, so a disk round trip
// reproduces in-memory runs exactly.
struct SplitSeeds {
  std::uint64_t source, source_eval, target, target_eval;
};
SplitSeeds split_seeds(const io::RunConfig& cfg) {
  const std::uint64_t base = mix_seed(cfg.seed, stream_tag("data"));
  SplitSeeds s{};
  s.source = base;
  s.source_eval = base + cfg.data.n_source;
  s.target = s.source_eval + cfg.data.n_source_eval;
  s.target_eval = s.target + cfg.data.n_target;
  return s;
}

int cmd_gen(const std::string& domain_name, int n, std::uint64_t seed, const std::string& out,
            int resolution) {
  const datagen::DomainSpec domain = resolve_domain(domain_name);
  const io::Manifest m = io::generate_dataset(n, domain, seed, out, resolution,
                                              domain_name == "target" ? DomainTag::kTarget
                                                                      : DomainTag::kSource);
  std::cout << "wrote " << m.count << " samples at " << m.resolution << "x" << m.resolution
            << " to " << out << "\n";
  return 0;
}

int cmd_gen_all(const CommonOpts& o) {
  const io::RunConfig cfg = load_config(o);
  const SplitSeeds s = split_seeds(cfg);
  io::generate_dataset(cfg.data.n_source, cfg.data.source_domain, s.source,
                       data_dir(cfg, "source"), cfg.resolution, DomainTag::kSource);
  io::generate_dataset(cfg.data.n_source_eval, cfg.data.source_domain, s.source_eval,
                       data_dir(cfg, "source_eval"), cfg.resolution, DomainTag::kSource);
  io::generate_dataset(cfg.data.n_target, cfg.data.target_domain, s.target,
                       data_dir(cfg, "target"), cfg.resolution, DomainTag::kTarget);
  io::generate_dataset(cfg.data.n_target_eval, cfg.data.target_domain, s.target_eval,
                       data_dir(cfg, "target_eval"), cfg.resolution, DomainTag::kTarget);
  std::cout << "wrote source/source_eval/target/target_eval under " << cfg.data.dir << "\n";
  return 0;
}

int cmd_pretrain(const CommonOpts& o) {
  const io::RunConfig cfg = load_config(o);
  const Dataset source = require_dataset(cfg, "source", io::LoadMode::kFull);
  io::RunDirectory run = io::RunDirectory::create(cfg, o.force);

  std::vector<seg::EpochLoss> history;
  const seg::SegModel model = pipeline::run_pretrain(cfg, source, &history);
  for (const auto& e : history) run.log_metrics({{"epoch", e.epoch}, {"loss", e.loss}});

  const std::string hash = io::config_hash(io::runconfig_to_json(cfg));
  io::save_seg_checkpoint(run.checkpoint_path("seg.ckpt"), model, cfg.pretrain.epochs - 1, hash);

  for (const char* split : {"source_eval", "target_eval"}) {
    const std::string dir = data_dir(cfg, split);
    if (!fs::exists(fs::path(dir) / "manifest.json")) continue;
    const auto rep =
        metrics::evaluate_segmentation(model, io::load_dataset(dir, io::LoadMode::kFull));
    run.log_metrics({{"event", "eval"}, {"split", split}, {"miou", rep.mean}});
    run.append_result_row(std::string("source_only/") + split, rep);
    std::cout << split << " miou " << rep.mean << "\n";
  }
  std::cout << "checkpoint: " << run.checkpoint_path("seg.ckpt") << "\n";
  return 0;
}

int cmd_train_prior(const CommonOpts& o) {
  const io::RunConfig cfg = load_config(o);
  const Dataset source = require_dataset(cfg, "source", io::LoadMode::kFull);
  io::RunDirectory run = io::RunDirectory::create(cfg, o.force);

  std::vector<double> history;
  const prior::PriorModel model = pipeline::run_train_prior(cfg, source, &history);
  for (std::size_t e = 0; e < history.size(); ++e)
    run.log_metrics({{"epoch", int(e)}, {"loss", history[e]}});

  const std::string hash = io::config_hash(io::runconfig_to_json(cfg));
  io::save_prior_checkpoint(run.checkpoint_path("prior.ckpt"), model, cfg.prior.epochs - 1, hash);

  const std::string eval_dir = data_dir(cfg, "source_eval");
  if (fs::exists(fs::path(eval_dir) / "manifest.json")) {
    const auto rep =
        pipeline::evaluate_prior(model, io::load_dataset(eval_dir, io::LoadMode::kFull));
    run.log_metrics({{"event", "eval"}, {"split", "source_eval"}, {"miou", rep.mean}});
    run.append_result_row("prior/source_eval", rep);
    std::cout << "prior source_eval miou " << rep.mean << "\n";
  }
  std::cout << "checkpoint: " << run.checkpoint_path("prior.ckpt") << "\n";
  return 0;
}

int cmd_adapt(const CommonOpts& o, bool source_free_flag, const std::string& init_override,
              const std::string& prior_override) {
  io::RunConfig cfg = load_config(o);
  if (source_free_flag) {
    cfg.adapt.source_free = true;
    cfg.adapt.terms.source = false;
  }
  if (!init_override.empty()) cfg.paths.init_checkpoint = init_override;
  if (!prior_override.empty()) cfg.paths.prior_checkpoint = prior_override;
  if (cfg.paths.init_checkpoint.empty() || cfg.paths.prior_checkpoint.empty())
    throw ConfigError("adapt needs paths.init_checkpoint and paths.prior_checkpoint");

  const seg::SegModel init = io::load_seg_checkpoint(cfg.paths.init_checkpoint);
  const prior::PriorModel prior_model = io::load_prior_checkpoint(cfg.paths.prior_checkpoint);
  const Dataset target = require_dataset(cfg, "target", io::LoadMode::kImagesOnly);
  const Dataset target_eval = require_dataset(cfg, "target_eval", io::LoadMode::kFull);

  adapt::AdaptConfig acfg = cfg.adapt;
  if (acfg.schedule.seed == 0) acfg.schedule.seed = pipeline::derived_seed(cfg, "adapt");
  pose::PoseCorruption corr = acfg.pose_corruption;
  if (corr.seed == 0) corr.seed = pipeline::derived_seed(cfg, "pose");
  const pose::PoseProvider provider =
      pose::PoseProvider::from_directory(data_dir(cfg, "target"), corr);

  io::RunDirectory run = io::RunDirectory::create(cfg, o.force);
  adapt::AdaptResult result;
  if (cfg.adapt.source_free) {
    result = adapt::adapt_sf(init, prior_model, provider, target, target_eval, acfg);
  } else {
    const Dataset source = require_dataset(cfg, "source", io::LoadMode::kFull);
    result = adapt::adapt_posture(init, prior_model, provider, source, target, target_eval, acfg);
  }
  for (const auto& rec : result.second) run.log_metrics(io::metrics_record_to_json(rec));

  const std::string hash = io::config_hash(io::runconfig_to_json(cfg));
  io::save_seg_checkpoint(run.checkpoint_path("seg.ckpt"), result.first,
                          acfg.schedule.epochs - 1, hash);
  const auto rep = metrics::evaluate_segmentation(result.first, target_eval);
  run.append_result_row(cfg.adapt.source_free ? "adapted_source_free" : "adapted", rep);
  std::cout << "final target_eval miou " << rep.mean << "\n";
  std::cout << "checkpoint: " << run.checkpoint_path("seg.ckpt") << "\n";
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& dir, int threads) {
  if (threads > 0) nn::set_num_threads(threads);
  const seg::SegModel model = io::load_seg_checkpoint(model_path);
  const Dataset data = io::load_dataset(dir, io::LoadMode::kFull);
  const auto rep = metrics::evaluate_segmentation(model, data);
  std::cout << io::result_header_csv() << "\n" << io::result_row_csv(dir, rep) << "\n";
  return 0;
}

int cmd_ablate(const CommonOpts& o, const std::string& seeds_arg) {
  const io::RunConfig cfg = load_config(o);
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(seeds_arg);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
  io::RunDirectory run = io::RunDirectory::create(cfg, o.force);

  const auto rows = pipeline::ablation_ladder(cfg, seeds);
  std::ofstream csv((fs::path(run.path()) / "ladder.csv").string());
  csv << "rung,mean_miou";
  for (std::size_t i = 0; i < seeds.size(); ++i) csv << ",seed" << seeds[i];
  csv << "\n";
  std::cout << "rung,mean_miou\n";
  for (const auto& row : rows) {
    csv << row.name << "," << row.mean_miou;
    for (double v : row.per_seed_miou) csv << "," << v;
    csv << "\n";
    std::cout << row.name << "," << row.mean_miou << "\n";
    Json rec{{"event", "ladder"}, {"rung", row.name}, {"mean_miou", row.mean_miou},
             {"per_seed", row.per_seed_miou}};
    run.log_metrics(rec);
  }
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& grid_path) {
  const io::RunConfig cfg = load_config(o);
  // default grid: the sensitivity values exercised in the sensitivity table
  std::vector<std::pair<double, double>> ab = {
      {0.95, 0.95}, {0.85, 0.95}, {0.75, 0.85}, {0.70, 0.85}, {0.65, 0.75}};
  std::vector<double> gammas = {0.10, 0.20, 0.25, 0.30, 0.40};
  if (!grid_path.empty()) {
    const io::Json g = io::load_json_file(grid_path);
    io::StrictObject go(g, "grid");
    std::vector<std::array<double, 2>> ab_raw;
    go.optional("alpha_beta", ab_raw);
    go.optional("gamma", gammas);
    go.finish();
    if (!ab_raw.empty()) {
      ab.clear();
      for (const auto& p : ab_raw) ab.emplace_back(p[0], p[1]);
    }
  }
  io::RunDirectory run = io::RunDirectory::create(cfg, o.force);
  const auto points = pipeline::sensitivity_sweep(cfg, ab, gammas);
  std::ofstream csv((fs::path(run.path()) / "sweep.csv").string());
  csv << "label,alpha,beta,gamma,miou\n";
  std::cout << "label,miou\n";
  double lo = 1.0, hi = 0.0;
  for (const auto& p : points) {
    csv << p.label << "," << p.alpha << "," << p.beta << "," << p.gamma << "," << p.miou << "\n";
    std::cout << p.label << "," << p.miou << "\n";
    run.log_metrics(Json{{"event", "sweep"},
                         {"label", p.label},
                         {"alpha", p.alpha},
                         {"beta", p.beta},
                         {"gamma", p.gamma},
                         {"miou", p.miou}});
    lo = std::min(lo, p.miou);
    hi = std::max(hi, p.miou);
  }
  std::cout << "spread," << hi - lo << "\n";
  return 0;
}

int cmd_plot(const std::string& run_dir) {
  for (const std::string& p : io::plot_run(run_dir)) std::cout << "wrote " << p << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pose-guided unsupervised domain adaptation lab for body-part segmentation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate one dataset directory");
  std::string gen_domain = "source", gen_out;
  int gen_n = 0, gen_res = 64;
  std::uint64_t gen_seed = 1;
  gen->add_option("--domain", gen_domain, "'source', 'target', or a DomainSpec JSON file");
  gen->add_option("--n", gen_n, "sample count")->required();
  gen->add_option("--seed", gen_seed, "base seed (sample i uses seed+i)");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--resolution", gen_res, "square image size");

  CommonOpts gen_all_o;
  auto* gen_all = app.add_subcommand("gen-all", "generate the four splits of a config");
  add_common(gen_all, gen_all_o);

  CommonOpts pre_o;
  auto* pre = app.add_subcommand("pretrain", "supervised source training");
  add_common(pre, pre_o);

  CommonOpts prior_o;
  auto* pri = app.add_subcommand("train-prior", "train the keypoints-to-mask prior");
  add_common(pri, prior_o);

  CommonOpts adapt_o;
  bool adapt_sf_flag = false;
  std::string adapt_init, adapt_prior;
  auto* ada = app.add_subcommand("adapt", "adapt the source model to the target domain");
  add_common(ada, adapt_o);
  ada->add_flag("--source-free", adapt_sf_flag, "drop the source term and source data");
  ada->add_option("--init", adapt_init, "override paths.init_checkpoint");
  ada->add_option("--prior", adapt_prior, "override paths.prior_checkpoint");

  std::string eval_model, eval_data;
  int eval_threads = 0;
  auto* ev = app.add_subcommand("eval", "per-class IoU table row for a checkpoint");
  ev->add_option("--model", eval_model, "segmentation checkpoint")->required();
  ev->add_option("--data", eval_data, "dataset directory")->required();
  ev->add_option("--threads", eval_threads, "worker threads");

  CommonOpts abl_o;
  std::string abl_seeds = "1,2,3";
  auto* abl = app.add_subcommand("ablate", "loss-term ablation ladder");
  add_common(abl, abl_o);
  abl->add_option("--seeds", abl_seeds, "comma-separated seeds (>= 3)");

  CommonOpts sw_o;
  std::string sw_grid;
  auto* sw = app.add_subcommand("sweep", "alpha/beta/gamma sensitivity grid");
  add_common(sw, sw_o);
  sw->add_option("--grid", sw_grid, "grid JSON: {\"alpha_beta\": [[a,b],...], \"gamma\": [...]}");

  std::string plot_dir;
  auto* pl = app.add_subcommand("plot", "loss and mIoU charts for a run directory");
  pl->add_option("--run", plot_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << io::Json{{"error", "UsageError"}, {"detail", e.what()}}.dump() << std::endl;
    return 1;
  }

  try {
    if (*gen) return cmd_gen(gen_domain, gen_n, gen_seed, gen_out, gen_res);
    if (*gen_all) return cmd_gen_all(gen_all_o);
    if (*pre) return cmd_pretrain(pre_o);
    if (*pri) return cmd_train_prior(prior_o);
    if (*ada) return cmd_adapt(adapt_o, adapt_sf_flag, adapt_init, adapt_prior);
    if (*ev) return cmd_eval(eval_model, eval_data, eval_threads);
    if (*abl) return cmd_ablate(abl_o, abl_seeds);
    if (*sw) return cmd_sweep(sw_o, sw_grid);
    if (*pl) return cmd_plot(plot_dir);
  } catch (const Error& e) {
    std::cerr << io::Json{{"error", e.kind}, {"detail", e.what()}}.dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << io::Json{{"error", "RuntimeError"}, {"detail", e.what()}}.dump() << std::endl;
    return 2;
  }
  return 0;
}
