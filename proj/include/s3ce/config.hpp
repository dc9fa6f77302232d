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


#ifndef S3CE_CONFIG_HPP
#define S3CE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "s3ce/augment.hpp"
#include "s3ce/contrastive.hpp"
#include "s3ce/selfexpr.hpp"
#include "s3ce/spectral.hpp"
#include "s3ce/synth.hpp"

namespace s3ce {

struct DatasetConfig {
  std::string source = "synth";  // synth | synth_images | idx | csv
  std::filesystem::path images;   // idx image file
  std::filesystem::path labels;   // idx label file, or one-int-per-line CSV
  std::filesystem::path samples;  // csv matrix, one sample per row
  std::size_t per_class = 0;      // subsample to this many per class; 0 keeps all
};

struct ExperimentConfig {
  std::string preset = "default";
  DatasetConfig dataset;
  SynthConfig synth;
  SynthImageConfig synth_images;
  AugmentConfig augment;
  std::vector<std::size_t> encoder_widths{512, 128};  // hidden widths after the input
  std::vector<std::size_t> projection_widths{64, 32};
  bool identity_encoder = false;
  PretrainConfig pretrain;
  ClusterStageConfig cluster;
  SpectralConfig spectral = SpectralConfig{0};  // clusters = 0 takes the class count of the dataset
  std::filesystem::path output_dir = "s3ce_out";
  bool heatmap = true;
  std::uint64_t seed = 0;

  void validate() const;
};

ExperimentConfig default_config();

const std::vector<std::string>& preset_names();
// Applies a named preset on top of `cfg`; unknown names are rejected.
void apply_preset(ExperimentConfig& cfg, const std::string& name);

// Sets one dotted key from its text value and validates the section it
// belongs to.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
const std::vector<std::string>& config_keys();

// `key = value` lines, `#` comments. Errors carry the 1-based line number.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = default_config());
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = default_config());

// Every key with its current value, in the same format parse_config reads.
void write_config(std::ostream& out, const ExperimentConfig& cfg);

}  // namespace s3ce

#endif  // S3CE_CONFIG_HPP
