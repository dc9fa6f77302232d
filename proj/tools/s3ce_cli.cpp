// Copyright 2026 The s3ce Authors.
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


// Command-line front end. Exit status: 0 success, 1 invalid input or
// configuration, 2 runtime failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "s3ce/config.hpp"
#include "s3ce/error.hpp"
#include "s3ce/matrix_io.hpp"
#include "s3ce/pipeline.hpp"

namespace {

struct GlobalOptions {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  bool identity_encoder = false;
  std::string out;
};

s3ce::ExperimentConfig build_config(const GlobalOptions& opt) {
  s3ce::ExperimentConfig cfg = s3ce::default_config();
  if (!opt.preset.empty()) s3ce::apply_preset(cfg, opt.preset);
  if (!opt.config.empty()) cfg = s3ce::load_config(opt.config, cfg);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.identity_encoder) cfg.identity_encoder = true;
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  cfg.validate();
  return cfg;
}

void print_metrics(const s3ce::MetricsReport& r) {
  std::printf("acc=%.4f nmi=%.4f n=%zu k_true=%zu k_pred=%zu\n", r.acc, r.nmi, r.n, r.k_true, r.k_pred);
}

void finish_stage(const s3ce::RunArtifacts& a) {
  s3ce::write_manifest(a.dir, a.files, true);
  s3ce::verify_artifacts(a.dir);
  std::printf("wrote %zu files to %s\n", a.files.size(), a.dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-supervised subspace clustering with an entropy-norm affinity"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  std::uint64_t seed = 0;
  app.add_option("--config", opt.config, "key = value configuration file");
  app.add_option("--preset", opt.preset, "named preset applied before the config file");
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_flag("--identity-encoder", opt.identity_encoder, "cluster the raw samples instead of learned features");
  app.add_option("--out", opt.out, "output directory (overrides output.dir)");

  auto* pretrain = app.add_subcommand("pretrain", "contrastive pre-training of encoder and head");
  auto* cluster = app.add_subcommand("cluster", "coefficient fit, affinity and spectral clustering");
  auto* eval = app.add_subcommand("eval", "score labels.csv against truth.csv");
  auto* heatmap = app.add_subcommand("heatmap", "render an affinity CSV as a PGM image");
  auto* synth = app.add_subcommand("synth", "write the configured synthetic dataset");
  auto* all = app.add_subcommand("all", "pretrain, cluster, eval and heatmap in one run");

  std::string heat_in, heat_out;
  heatmap->add_option("input", heat_in, "affinity CSV (default <out>/W.csv)");
  heatmap->add_option("output", heat_out, "PGM path (default <out>/W.pgm)");
  std::string eval_labels, eval_truth;
  eval->add_option("--labels", eval_labels, "predicted labels CSV (default <out>/labels.csv)");
  eval->add_option("--truth", eval_truth, "ground-truth labels CSV (default <out>/truth.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (*seed_opt) opt.seed = seed;

  try {
    const s3ce::ExperimentConfig cfg = build_config(opt);
    if (*pretrain) {
      const auto a = s3ce::run_pretrain(cfg);
      const auto loss = s3ce::load_loss_history(cfg.output_dir / "pretrain_loss.csv");
      if (!loss.empty()) std::printf("pretrain: %zu epochs, loss %.4f -> %.4f\n", loss.size(), loss.front(), loss.back());
      finish_stage(a);
    } else if (*cluster) {
      const auto a = s3ce::run_cluster(cfg);
      std::printf("cluster: n=%zu\n", s3ce::load_labels(cfg.output_dir / "labels.csv").size());
      finish_stage(a);
    } else if (*eval) {
      if (!eval_labels.empty() || !eval_truth.empty()) {
        const auto labels = eval_labels.empty() ? cfg.output_dir / "labels.csv" : std::filesystem::path(eval_labels);
        const auto truth = eval_truth.empty() ? cfg.output_dir / "truth.csv" : std::filesystem::path(eval_truth);
        const s3ce::MetricsReport r = s3ce::evaluate_files(labels, truth, cfg.seed);
        std::filesystem::create_directories(cfg.output_dir);
        s3ce::save_metrics(cfg.output_dir / "metrics.txt", r);
        print_metrics(r);
        finish_stage(s3ce::RunArtifacts{cfg.output_dir, {"metrics.txt"}});
      } else {
        s3ce::MetricsReport r;
        const auto a = s3ce::run_eval(cfg, &r);
        print_metrics(r);
        finish_stage(a);
      }
    } else if (*heatmap) {
      const auto in = heat_in.empty() ? cfg.output_dir / "W.csv" : std::filesystem::path(heat_in);
      const auto out = heat_out.empty() ? cfg.output_dir / "W.pgm" : std::filesystem::path(heat_out);
      s3ce::export_heatmap(in, out);
      std::printf("wrote %s\n", out.string().c_str());
    } else if (*synth) {
      finish_stage(s3ce::run_synth(cfg));
    } else if (*all) {
      s3ce::MetricsReport r;
      const auto a = s3ce::run_all(cfg, &r);
      s3ce::verify_artifacts(a.dir);
      if (std::filesystem::exists(cfg.output_dir / "metrics.txt")) print_metrics(r);
      std::printf("wrote %zu files to %s\n", a.files.size(), a.dir.string().c_str());
    }
  } catch (const s3ce::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
