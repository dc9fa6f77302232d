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


#include "s3ce/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "s3ce/augment.hpp"
#include "s3ce/contrastive.hpp"
#include "s3ce/encoder.hpp"
#include "s3ce/error.hpp"
#include "s3ce/idx.hpp"
#include "s3ce/matrix_io.hpp"
#include "s3ce/rng.hpp"
#include "s3ce/selfexpr.hpp"
#include "s3ce/spectral.hpp"
#include "s3ce/synth.hpp"

namespace s3ce {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifest = "manifest.txt";

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_config(const fs::path& path, const ExperimentConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_config(out, cfg);
}

std::size_t input_width(const ExperimentConfig& cfg, const LabeledDataset& ds) {
  return ds.image ? cfg.augment.output_shape(*ds.image).pixels() : ds.samples.cols();
}

void check_mlp_shape(const Mlp& p, const std::vector<std::size_t>& expected, const char* what) {
  if (p.config().widths != expected) {
    auto text = [](const std::vector<std::size_t>& w) {
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
      return s;
    };
    throw ValidationError(std::string("saved ") + what + " has widths " + text(p.config().widths) + " but the config expects " + text(expected));
  }
}

}  // namespace

std::uint64_t pretrain_seed(const ExperimentConfig& cfg) { return derive_seed(cfg.seed, {100}); }
std::uint64_t cluster_seed(const ExperimentConfig& cfg) { return derive_seed(cfg.seed, {200}); }
std::uint64_t spectral_seed(const ExperimentConfig& cfg) { return derive_seed(cfg.seed, {300}); }

LabeledDataset load_dataset(const ExperimentConfig& cfg) {
  const std::string& src = cfg.dataset.source;
  LabeledDataset ds;
  if (src == "synth") {
    ds = synth_subspaces(cfg.synth, derive_seed(cfg.seed, {400}));
  } else if (src == "synth_images") {
    ds = synth_images(cfg.synth_images, derive_seed(cfg.seed, {401}));
  } else if (src == "idx") {
    ds = read_idx_files(cfg.dataset.images, cfg.dataset.labels);
  } else if (src == "csv") {
    ds.samples = load_matrix(cfg.dataset.samples);
    if (!cfg.dataset.labels.empty()) ds.labels = load_labels(cfg.dataset.labels);
  } else {
    throw ValidationError("unknown dataset source '" + src + "'");
  }
  ds.validate();
  if (cfg.dataset.per_class > 0) {
    if (!ds.labels) throw ValidationError("dataset.per_class needs labels");
    ds = subsample_per_class(ds, cfg.dataset.per_class, derive_seed(cfg.seed, {402}));
  }
  return ds;
}

SpectralConfig resolved_spectral(const ExperimentConfig& cfg, const LabeledDataset& ds) {
  SpectralConfig s = cfg.spectral;
  s.seed = spectral_seed(cfg);
  if (s.clusters == 0) {
    if (!ds.labels) throw ValidationError("spectral.clusters = 0 needs a labeled dataset to infer the class count");
    s.clusters = ds.num_classes();
  }
  s.validate();
  return s;
}

RunArtifacts run_pretrain(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.identity_encoder) throw ValidationError("pretrain: the identity encoder has no parameters to train");
  const LabeledDataset ds = load_dataset(cfg);
  ensure_dir(cfg.output_dir);
  PretrainConfig pc = cfg.pretrain;
  pc.seed = pretrain_seed(cfg);
  const PretrainResult r = pretrain(ds, cfg.encoder_widths, cfg.projection_widths, cfg.augment, pc);

  RunArtifacts out{cfg.output_dir, {}};
  save_config(cfg.output_dir / "config.txt", cfg);
  out.files.push_back("config.txt");
  for (auto& f : save_mlp(cfg.output_dir, "encoder", r.encoder)) out.files.push_back(f);
  for (auto& f : save_mlp(cfg.output_dir, "projection", r.projection)) out.files.push_back(f);
  save_loss_history(cfg.output_dir / "pretrain_loss.csv", r.loss_history);
  out.files.push_back("pretrain_loss.csv");
  return out;
}

RunArtifacts run_cluster(const ExperimentConfig& cfg) {
  cfg.validate();
  const LabeledDataset ds = load_dataset(cfg);
  const SpectralConfig sc = resolved_spectral(cfg, ds);
  ensure_dir(cfg.output_dir);

  Matrix features;
  std::optional<ProjectionParams> head;
  if (cfg.identity_encoder) {
    features = ds.image ? clustering_inputs(ds, cfg.augment) : ds.samples;
  } else {
    const Mlp encoder = load_mlp(cfg.output_dir, "encoder");
    const Mlp projection = load_mlp(cfg.output_dir, "projection");
    std::vector<std::size_t> enc_widths{input_width(cfg, ds)};
    enc_widths.insert(enc_widths.end(), cfg.encoder_widths.begin(), cfg.encoder_widths.end());
    std::vector<std::size_t> proj_widths{cfg.encoder_widths.back()};
    proj_widths.insert(proj_widths.end(), cfg.projection_widths.begin(), cfg.projection_widths.end());
    check_mlp_shape(encoder, enc_widths, "encoder");
    check_mlp_shape(projection, proj_widths, "projection head");
    features = encode(encoder, clustering_inputs(ds, cfg.augment));
    head = projection;
  }

  ClusterStageConfig cc = cfg.cluster;
  cc.seed = cluster_seed(cfg);
  const CoefficientFit fit = fit_coefficients(features, head, cc);
  const Affinity w = affinity(fit.coefficients.matrix());
  const ClusterAssignment labels = spectral_cluster(w, sc);

  RunArtifacts out{cfg.output_dir, {}};
  save_config(cfg.output_dir / "config.txt", cfg);
  out.files.push_back("config.txt");
  save_matrix(cfg.output_dir / "C.csv", fit.coefficients.matrix());
  save_matrix(cfg.output_dir / "W.csv", w.matrix());
  save_labels(cfg.output_dir / "labels.csv", labels.labels);
  save_loss_history(cfg.output_dir / "cluster_loss.csv", fit.loss_history);
  out.files.insert(out.files.end(), {"C.csv", "W.csv", "labels.csv", "cluster_loss.csv"});
  if (fit.projection && !cfg.identity_encoder) {
    for (auto& f : save_mlp(cfg.output_dir, "projection_tuned", *fit.projection)) out.files.push_back(f);
  }
  if (ds.labels) {
    save_labels(cfg.output_dir / "truth.csv", *ds.labels);
    out.files.push_back("truth.csv");
  }
  return out;
}

MetricsReport evaluate_files(const fs::path& labels, const fs::path& truth, std::uint64_t seed) {
  return evaluate(load_labels(truth), load_labels(labels), seed);
}

RunArtifacts run_eval(const ExperimentConfig& cfg, MetricsReport* report) {
  const fs::path truth = cfg.output_dir / "truth.csv";
  if (!fs::exists(truth)) throw ValidationError("eval: no ground truth at " + truth.string() + " (dataset has no labels?)");
  const MetricsReport r = evaluate_files(cfg.output_dir / "labels.csv", truth, cfg.seed);
  save_metrics(cfg.output_dir / "metrics.txt", r);
  if (report) *report = r;
  return RunArtifacts{cfg.output_dir, {"metrics.txt"}};
}

void write_heatmap(std::ostream& out, const Matrix& w) {
  if (!w.is_square()) throw ValidationError("heatmap: W must be square, got " + w.shape_string());
  double mx = 0.0;
  for (double v : w.values()) mx = std::max(mx, v);
  out << "P5\n" << w.cols() << ' ' << w.rows() << "\n255\n";
  std::string pixels(w.size(), '\0');
  if (mx > 0.0) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double scaled = std::clamp(std::round(255.0 * w.values()[k] / mx), 0.0, 255.0);
      pixels[k] = static_cast<char>(static_cast<unsigned char>(scaled));
    }
  }
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
}

void export_heatmap(const fs::path& w_csv, const fs::path& pgm) {
  const Matrix w = load_matrix(w_csv);
  std::ofstream out(pgm, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + pgm.string());
  write_heatmap(out, w);
}

RunArtifacts run_synth(const ExperimentConfig& cfg) {
  ensure_dir(cfg.output_dir);
  RunArtifacts out{cfg.output_dir, {}};
  if (cfg.dataset.source == "synth_images") {
    const LabeledDataset ds = load_dataset(cfg);
    std::ofstream images(cfg.output_dir / "images.idx", std::ios::binary);
    std::ofstream labels(cfg.output_dir / "labels.idx", std::ios::binary);
    if (!images || !labels) throw std::runtime_error("cannot write IDX files in " + cfg.output_dir.string());
    write_idx_images(images, ds);
    write_idx_labels(labels, ds);
    out.files = {"images.idx", "labels.idx"};
  } else {
    ExperimentConfig synth = cfg;
    synth.dataset.source = "synth";
    synth.dataset.per_class = 0;
    const LabeledDataset ds = load_dataset(synth);
    save_matrix(cfg.output_dir / "samples.csv", ds.samples);
    save_labels(cfg.output_dir / "truth.csv", *ds.labels);
    out.files = {"samples.csv", "truth.csv"};
  }
  return out;
}

RunArtifacts run_all(const ExperimentConfig& cfg, MetricsReport* report) {
  cfg.validate();
  RunArtifacts all{cfg.output_dir, {}};
  auto add = [&](const RunArtifacts& r) {
    for (const auto& f : r.files)
      if (std::find(all.files.begin(), all.files.end(), f) == all.files.end()) all.files.push_back(f);
  };
  if (!cfg.identity_encoder) add(run_pretrain(cfg));
  add(run_cluster(cfg));
  if (fs::exists(cfg.output_dir / "truth.csv")) add(run_eval(cfg, report));
  if (cfg.heatmap) {
    export_heatmap(cfg.output_dir / "W.csv", cfg.output_dir / "W.pgm");
    add(RunArtifacts{cfg.output_dir, {"W.pgm"}});
  }
  write_manifest(cfg.output_dir, all.files, false);
  return all;
}

void write_manifest(const fs::path& dir, const std::vector<std::string>& files, bool merge) {
  std::vector<std::string> entries;
  if (merge && fs::exists(dir / kManifest)) entries = read_manifest(dir);
  for (const auto& f : files)
    if (std::find(entries.begin(), entries.end(), f) == entries.end()) entries.push_back(f);
  std::ofstream out(dir / kManifest);
  if (!out) throw std::runtime_error("cannot write " + (dir / kManifest).string());
  for (const auto& f : entries) out << f << '\n';
}

std::vector<std::string> read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifest);
  if (!in) throw ValidationError("no manifest in " + dir.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

void verify_artifacts(const fs::path& dir) {
  const std::vector<std::string> files = read_manifest(dir);
  for (const auto& name : files) {
    const fs::path path = dir / name;
    if (!fs::is_regular_file(path)) throw ValidationError("manifest lists missing file " + name);
    const fs::path ext = path.extension();
    try {
      if (name == "C.csv" || name == "W.csv" || (ext == ".csv" && name.find("_layer") != std::string::npos)) {
        const Matrix m = load_matrix(path);
        std::ostringstream again;
        write_matrix_csv(again, m);
        if (again.str() != read_file(path)) throw ValidationError("does not re-serialize byte-identically");
        if (name == "C.csv") CoefficientMatrix{m};
        if (name == "W.csv") Affinity{m};
      } else if (name == "labels.csv" || name == "truth.csv") {
        load_labels(path);
      } else if (name == "pretrain_loss.csv" || name == "cluster_loss.csv") {
        load_loss_history(path);
      } else if (name == "metrics.txt") {
        load_metrics(path);
      } else if (ext == ".manifest") {
        load_mlp(dir, path.stem().string()).validate();
      }
    } catch (const ValidationError& e) {
      throw ValidationError("artifact " + name + ": " + e.what());
    }
  }
}

}  // namespace s3ce
