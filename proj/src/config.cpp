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


#include "s3ce/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "s3ce/error.hpp"
#include "s3ce/matrix_io.hpp"

namespace s3ce {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) throw ValidationError("expected a number, got '" + v + "'");
  return out;
}

std::uint64_t parse_count(const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ValidationError("expected a non-negative integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("expected true or false, got '" + v + "'");
}

std::vector<std::size_t> parse_widths(const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::uint64_t w = parse_count(trim(item));
    if (w == 0) throw ValidationError("layer widths must be positive");
    out.push_back(w);
  }
  if (out.empty()) throw ValidationError("expected a comma-separated list of widths");
  return out;
}

std::string join_widths(const std::vector<std::size_t>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_source(const std::string& s) {
  if (s != "synth" && s != "synth_images" && s != "idx" && s != "csv")
    throw ValidationError("dataset.source must be synth, synth_images, idx or csv, got '" + s + "'");
}

void check_projection(const std::vector<std::size_t>& w) {
  if (w.size() != 2) throw ValidationError("projection.widths must list exactly two widths");
}

void check_spectral(const SpectralConfig& s) {
  SpectralConfig probe = s;
  if (probe.clusters == 0) probe.clusters = 2;
  probe.validate();
}

void check_synth(const SynthConfig& s) {
  if (s.clusters < 1 || s.subspace_dim < 1 || s.points_per_cluster < 1) throw ValidationError("synth: counts must be positive");
  if (s.subspace_dim > s.ambient_dim) throw ValidationError("synth: subspace_dim exceeds ambient_dim");
  if (!(s.noise_sigma >= 0.0)) throw ValidationError("synth: noise_sigma must be >= 0");
}

void check_synth_images(const SynthImageConfig& s) {
  if (s.classes < 1 || s.per_class < 1 || s.size < 4) throw ValidationError("synth_images: classes, per_class >= 1 and size >= 4 required");
  if (!(s.noise >= 0.0)) throw ValidationError("synth_images: noise must be >= 0");
}

struct Key {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define S3CE_REAL(field, check) \
  Key{[](ExperimentConfig& c, const std::string& v) { c.field = parse_real(v); check; }, [](const ExperimentConfig& c) { return real_text(c.field); }}
#define S3CE_COUNT(field, check) \
  Key{[](ExperimentConfig& c, const std::string& v) { c.field = parse_count(v); check; }, [](const ExperimentConfig& c) { return std::to_string(c.field); }}
#define S3CE_BOOL(field, check) \
  Key{[](ExperimentConfig& c, const std::string& v) { c.field = parse_bool(v); check; }, [](const ExperimentConfig& c) { return std::string(c.field ? "true" : "false"); }}
#define S3CE_PATH(field) \
  Key{[](ExperimentConfig& c, const std::string& v) { c.field = v; }, [](const ExperimentConfig& c) { return c.field.string(); }}

const std::vector<std::pair<std::string, Key>>& key_table() {
  static const std::vector<std::pair<std::string, Key>> table = {
      {"preset", Key{[](ExperimentConfig& c, const std::string& v) { apply_preset(c, v); }, [](const ExperimentConfig& c) { return c.preset; }}},
      {"seed", S3CE_COUNT(seed, )},
      {"dataset.source", Key{[](ExperimentConfig& c, const std::string& v) { check_source(v); c.dataset.source = v; },
                             [](const ExperimentConfig& c) { return c.dataset.source; }}},
      {"dataset.images", S3CE_PATH(dataset.images)},
      {"dataset.labels", S3CE_PATH(dataset.labels)},
      {"dataset.samples", S3CE_PATH(dataset.samples)},
      {"dataset.per_class", S3CE_COUNT(dataset.per_class, )},
      {"synth.clusters", S3CE_COUNT(synth.clusters, check_synth(c.synth))},
      {"synth.subspace_dim", S3CE_COUNT(synth.subspace_dim, check_synth(c.synth))},
      {"synth.ambient_dim", S3CE_COUNT(synth.ambient_dim, check_synth(c.synth))},
      {"synth.points_per_cluster", S3CE_COUNT(synth.points_per_cluster, check_synth(c.synth))},
      {"synth.noise_sigma", S3CE_REAL(synth.noise_sigma, check_synth(c.synth))},
      {"synth_images.classes", S3CE_COUNT(synth_images.classes, check_synth_images(c.synth_images))},
      {"synth_images.per_class", S3CE_COUNT(synth_images.per_class, check_synth_images(c.synth_images))},
      {"synth_images.size", S3CE_COUNT(synth_images.size, check_synth_images(c.synth_images))},
      {"synth_images.noise", S3CE_REAL(synth_images.noise, check_synth_images(c.synth_images))},
      {"augment.output_size", S3CE_COUNT(augment.output_size, c.augment.validate())},
      {"augment.crop_scale_lo", S3CE_REAL(augment.crop_scale_lo, c.augment.validate())},
      {"augment.crop_scale_hi", S3CE_REAL(augment.crop_scale_hi, c.augment.validate())},
      {"augment.rotation_max_degrees", S3CE_REAL(augment.rotation_max_degrees, c.augment.validate())},
      {"augment.jitter_strength", S3CE_REAL(augment.jitter_strength, c.augment.validate())},
      {"augment.blur_sigma_lo", S3CE_REAL(augment.blur_sigma_lo, c.augment.validate())},
      {"augment.blur_sigma_hi", S3CE_REAL(augment.blur_sigma_hi, c.augment.validate())},
      {"augment.grayscale_probability", S3CE_REAL(augment.grayscale_probability, c.augment.validate())},
      {"augment.flip_probability", S3CE_REAL(augment.flip_probability, c.augment.validate())},
      {"augment.enable_crop", S3CE_BOOL(augment.enable_crop, )},
      {"augment.enable_flip", S3CE_BOOL(augment.enable_flip, )},
      {"augment.enable_rotation", S3CE_BOOL(augment.enable_rotation, )},
      {"augment.enable_jitter", S3CE_BOOL(augment.enable_jitter, )},
      {"augment.enable_grayscale", S3CE_BOOL(augment.enable_grayscale, )},
      {"augment.enable_blur", S3CE_BOOL(augment.enable_blur, )},
      {"encoder.widths", Key{[](ExperimentConfig& c, const std::string& v) { c.encoder_widths = parse_widths(v); },
                             [](const ExperimentConfig& c) { return join_widths(c.encoder_widths); }}},
      {"encoder.identity", S3CE_BOOL(identity_encoder, )},
      {"projection.widths", Key{[](ExperimentConfig& c, const std::string& v) {
                                  const auto w = parse_widths(v);
                                  check_projection(w);
                                  c.projection_widths = w;
                                },
                                [](const ExperimentConfig& c) { return join_widths(c.projection_widths); }}},
      {"pretrain.temperature", S3CE_REAL(pretrain.temperature, c.pretrain.validate())},
      {"pretrain.batch_size", S3CE_COUNT(pretrain.batch_size, c.pretrain.validate())},
      {"pretrain.epochs", S3CE_COUNT(pretrain.epochs, )},
      {"pretrain.learning_rate", S3CE_REAL(pretrain.learning_rate, c.pretrain.validate())},
      {"cluster.lambda1", S3CE_REAL(cluster.lambda1, c.cluster.validate())},
      {"cluster.lambda2", S3CE_REAL(cluster.lambda2, c.cluster.validate())},
      {"cluster.learning_rate", S3CE_REAL(cluster.learning_rate, c.cluster.validate())},
      {"cluster.epochs", S3CE_COUNT(cluster.epochs, )},
      {"cluster.entropy_mode", Key{[](ExperimentConfig& c, const std::string& v) { c.cluster.entropy_mode = parse_entropy_mode(v); },
                                   [](const ExperimentConfig& c) { return std::string(entropy_mode_name(c.cluster.entropy_mode)); }}},
      {"cluster.fine_tune_projection", S3CE_BOOL(cluster.fine_tune_projection, )},
      {"spectral.clusters", Key{[](ExperimentConfig& c, const std::string& v) {
                                  const auto k = parse_count(v);
                                  if (k == 1) throw ValidationError("spectral.clusters must be 0 (from data) or >= 2");
                                  c.spectral.clusters = k;
                                },
                                [](const ExperimentConfig& c) { return std::to_string(c.spectral.clusters); }}},
      {"spectral.kmeans_restarts", S3CE_COUNT(spectral.kmeans_restarts, check_spectral(c.spectral))},
      {"spectral.kmeans_max_iters", S3CE_COUNT(spectral.kmeans_max_iters, check_spectral(c.spectral))},
      {"spectral.degree_floor", S3CE_REAL(spectral.degree_floor, check_spectral(c.spectral))},
      {"output.dir", S3CE_PATH(output_dir)},
      {"output.heatmap", S3CE_BOOL(heatmap, )},
  };
  return table;
}

#undef S3CE_REAL
#undef S3CE_COUNT
#undef S3CE_BOOL
#undef S3CE_PATH

}  // namespace

void ExperimentConfig::validate() const {
  check_source(dataset.source);
  if (dataset.source == "idx" && (dataset.images.empty() || dataset.labels.empty()))
    throw ValidationError("dataset.source = idx needs dataset.images and dataset.labels");
  if (dataset.source == "csv" && dataset.samples.empty()) throw ValidationError("dataset.source = csv needs dataset.samples");
  check_synth(synth);
  check_synth_images(synth_images);
  augment.validate();
  if (encoder_widths.empty()) throw ValidationError("encoder.widths is empty");
  check_projection(projection_widths);
  pretrain.validate();
  cluster.validate();
  check_spectral(spectral);
  if (output_dir.empty()) throw ValidationError("output.dir is empty");
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"default", "synthetic", "coil20", "coil100", "oxflowers17-a", "oxflowers17-b", "mnist1000"};
  return names;
}

void apply_preset(ExperimentConfig& cfg, const std::string& name) {
  auto image_dataset = [&](std::size_t classes, double l1, double l2) {
    cfg.dataset.source = "idx";
    cfg.spectral.clusters = classes;
    cfg.cluster.lambda1 = l1;
    cfg.cluster.lambda2 = l2;
  };
  if (name == "default") {
  } else if (name == "synthetic") {
    cfg.dataset.source = "synth";
    cfg.encoder_widths = {64, 32};
    cfg.projection_widths = {32, 16};
    cfg.pretrain.epochs = 20;
    cfg.cluster.learning_rate = 0.05;
    cfg.cluster.epochs = 300;
    cfg.cluster.entropy_mode = EntropyMode::kLiteral;
  } else if (name == "coil20") {
    image_dataset(20, 1.0, 75.0);
    cfg.augment.output_size = 32;
  } else if (name == "coil100") {
    image_dataset(100, 1.0, 15.0);
    cfg.augment.output_size = 32;
  } else if (name == "oxflowers17-a") {
    image_dataset(17, 0.1, 10.0);
    cfg.augment.output_size = 32;
  } else if (name == "oxflowers17-b") {
    image_dataset(17, 1.0, 6.0);
    cfg.augment.output_size = 32;
  } else if (name == "mnist1000") {
    image_dataset(10, 1.0, 75.0);
    cfg.dataset.per_class = 100;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
  }
  cfg.preset = name;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : key_table()) out.push_back(k);
    return out;
  }();
  return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& [k, entry] : key_table()) {
    if (k != key) continue;
    ExperimentConfig next = cfg;
    entry.set(next, value);
    cfg = std::move(next);
    return;
  }
  throw ValidationError("unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw ValidationError("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (value.empty()) throw ValidationError("missing value for '" + key + "'");
      set_config_value(base, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  try {
    return parse_config(in, std::move(base));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  for (const auto& [k, entry] : key_table()) {
    if (k == "preset") {
      out << "# preset " << cfg.preset << "\n";  // re-applying it would undo overrides
      continue;
    }
    const std::string v = entry.get(cfg);
    if (v.empty()) continue;
    out << k << " = " << v << '\n';
  }
}

}  // namespace s3ce
