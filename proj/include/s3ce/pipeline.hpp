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


#ifndef S3CE_PIPELINE_HPP
#define S3CE_PIPELINE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "s3ce/config.hpp"
#include "s3ce/dataset.hpp"
#include "s3ce/metrics.hpp"

namespace s3ce {

// Files written by a stage, relative to the output directory.
struct RunArtifacts {
  std::filesystem::path dir;
  std::vector<std::string> files;
};

// Dataset named by the config. Synthetic data and per-class subsampling draw
// their seeds from the master seed.
LabeledDataset load_dataset(const ExperimentConfig& cfg);

// Spectral settings with clusters = 0 replaced by the dataset's class count.
SpectralConfig resolved_spectral(const ExperimentConfig& cfg, const LabeledDataset& ds);

// Stage seeds, all derived from cfg.seed.
std::uint64_t pretrain_seed(const ExperimentConfig& cfg);
std::uint64_t cluster_seed(const ExperimentConfig& cfg);
std::uint64_t spectral_seed(const ExperimentConfig& cfg);

// Trains the encoder and head; writes encoder.manifest, projection.manifest,
// their CSVs and pretrain_loss.csv.
RunArtifacts run_pretrain(const ExperimentConfig& cfg);

// Loads the saved encoder and head from the output directory (unless the
// identity encoder is configured), fits C, builds W and clusters. Writes
// C.csv, W.csv, labels.csv, cluster_loss.csv, and truth.csv when the
// dataset is labeled.
RunArtifacts run_cluster(const ExperimentConfig& cfg);

// Scores labels.csv against truth.csv in the output directory and writes
// metrics.txt.
RunArtifacts run_eval(const ExperimentConfig& cfg, MetricsReport* report = nullptr);
MetricsReport evaluate_files(const std::filesystem::path& labels, const std::filesystem::path& truth, std::uint64_t seed);

// Binary PGM (P5); pixel = round(255 w / max W), all black when max W = 0.
void write_heatmap(std::ostream& out, const Matrix& w);
void export_heatmap(const std::filesystem::path& w_csv, const std::filesystem::path& pgm);

// Writes the configured synthetic dataset: samples.csv + truth.csv for
// subspaces, images.idx + labels.idx for images.
RunArtifacts run_synth(const ExperimentConfig& cfg);

// pretrain (skipped for the identity encoder), cluster, eval and heatmap,
// with one manifest covering everything.
RunArtifacts run_all(const ExperimentConfig& cfg, MetricsReport* report = nullptr);

// manifest.txt: one relative path per line. `merge` keeps existing entries.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files, bool merge);
std::vector<std::string> read_manifest(const std::filesystem::path& dir);

// Every manifest entry exists and its content passes the invariant checks
// for its kind; persisted matrices must re-serialize byte-identically.
void verify_artifacts(const std::filesystem::path& dir);

}  // namespace s3ce

#endif  // S3CE_PIPELINE_HPP
