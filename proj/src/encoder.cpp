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


#include "s3ce/encoder.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "s3ce/error.hpp"
#include "s3ce/matrix_io.hpp"
#include "s3ce/ops.hpp"
#include "s3ce/rng.hpp"

namespace s3ce {

void MlpConfig::validate() const {
  if (widths.size() < 2) throw ValidationError("mlp needs at least an input and an output width");
  for (std::size_t w : widths)
    if (w < 1) throw ValidationError("mlp widths must be >= 1");
}

MlpConfig Mlp::config() const {
  MlpConfig cfg;
  if (layers.empty()) return cfg;
  cfg.widths.push_back(layers.front().weight.cols());
  for (const auto& l : layers) cfg.widths.push_back(l.weight.rows());
  return cfg;
}

std::size_t Mlp::input_width() const { return layers.empty() ? 0 : layers.front().weight.cols(); }
std::size_t Mlp::output_width() const { return layers.empty() ? 0 : layers.back().weight.rows(); }

void Mlp::validate() const {
  if (layers.empty()) throw ValidationError("mlp has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.bias.rows() != 1 || l.bias.cols() != l.weight.rows()) {
      throw ValidationError("layer " + std::to_string(i) + " bias " + l.bias.shape_string() +
                            " does not match weight " + l.weight.shape_string());
    }
    if (i > 0 && l.weight.cols() != layers[i - 1].weight.rows()) {
      throw ValidationError("layer " + std::to_string(i) + " input width does not chain");
    }
    if (!l.weight.all_finite() || !l.bias.all_finite()) {
      throw ValidationError("layer " + std::to_string(i) + " has non-finite entries");
    }
  }
}

Mlp init_params(const MlpConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  Mlp p;
  for (std::size_t i = 0; i + 1 < cfg.widths.size(); ++i) {
    const std::size_t in = cfg.widths[i];
    const std::size_t out = cfg.widths[i + 1];
    const double bound = std::sqrt(6.0 / static_cast<double>(in));
    DenseLayer layer{Matrix(out, in), Matrix(1, out)};
    for (double& w : layer.weight.values()) w = uniform(rng, -bound, bound);
    p.layers.push_back(std::move(layer));
  }
  return p;
}

Matrix encode(const Mlp& p, const Matrix& batch) {
  if (batch.cols() != p.input_width()) {
    throw ValidationError("encode: batch " + batch.shape_string() + " does not match input width " +
                          std::to_string(p.input_width()));
  }
  const Matrix ones = Matrix::ones(batch.rows(), 1);
  Matrix h = batch;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    h = matmul_nt(h, p.layers[i].weight) + matmul(ones, p.layers[i].bias);
    if (i + 1 < p.layers.size()) h = relu(h);
  }
  return h;
}

Matrix project(const Mlp& head, const Matrix& h) {
  if (head.layers.size() != 2) throw ValidationError("projection head must have exactly two layers");
  return encode(head, h);
}

MlpVars bind_mlp(Tape& tape, const Mlp& p, const std::string& prefix, bool trainable) {
  MlpVars vars;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    const std::string base = prefix + "." + std::to_string(i) + ".";
    if (trainable) {
      vars.weights.push_back(tape.parameter(base + "weight", p.layers[i].weight));
      vars.biases.push_back(tape.parameter(base + "bias", p.layers[i].bias));
    } else {
      vars.weights.push_back(tape.constant(p.layers[i].weight));
      vars.biases.push_back(tape.constant(p.layers[i].bias));
    }
  }
  return vars;
}

Var mlp_forward(Tape& tape, const Mlp& p, const MlpVars& vars, Var x) {
  const Matrix& in = tape.value(x);
  if (in.cols() != p.input_width()) {
    throw ValidationError("mlp_forward: input " + in.shape_string() + " does not match input width " +
                          std::to_string(p.input_width()));
  }
  const Var ones = tape.constant(Matrix::ones(in.rows(), 1));
  Var h = x;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    h = tape.add(tape.matmul(h, vars.weights[i], false, true), tape.matmul(ones, vars.biases[i]));
    if (i + 1 < p.layers.size()) h = tape.relu(h);
  }
  return h;
}

std::vector<Parameter> mlp_parameters(const Mlp& p, const std::string& prefix) {
  std::vector<Parameter> out;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    const std::string base = prefix + "." + std::to_string(i) + ".";
    out.push_back({base + "weight", p.layers[i].weight});
    out.push_back({base + "bias", p.layers[i].bias});
  }
  return out;
}

void assign_mlp_parameters(Mlp& p, std::span<const Parameter> params, const std::string& prefix) {
  for (const Parameter& param : params) {
    if (param.name.rfind(prefix + ".", 0) != 0) continue;
    const std::string rest = param.name.substr(prefix.size() + 1);
    const auto dot = rest.find('.');
    const std::size_t layer = std::stoul(rest.substr(0, dot));
    const std::string field = rest.substr(dot + 1);
    if (layer >= p.layers.size()) throw ValidationError("parameter '" + param.name + "' has no matching layer");
    Matrix& target = field == "weight" ? p.layers[layer].weight : p.layers[layer].bias;
    if (target.rows() != param.value.rows() || target.cols() != param.value.cols()) {
      throw ValidationError("parameter '" + param.name + "' has the wrong shape");
    }
    target = param.value;
  }
}

std::vector<std::string> save_mlp(const std::filesystem::path& dir, const std::string& name, const Mlp& p) {
  p.validate();
  std::vector<std::string> files{name + ".manifest"};
  std::ostringstream manifest;
  manifest << "layers " << p.layers.size() << '\n';
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    const std::string w = name + "_layer" + std::to_string(i) + "_weight.csv";
    const std::string b = name + "_layer" + std::to_string(i) + "_bias.csv";
    save_matrix(dir / w, p.layers[i].weight);
    save_matrix(dir / b, p.layers[i].bias);
    manifest << "weight " << i << ' ' << p.layers[i].weight.rows() << ' ' << p.layers[i].weight.cols() << ' ' << w
             << '\n';
    manifest << "bias " << i << ' ' << p.layers[i].bias.rows() << ' ' << p.layers[i].bias.cols() << ' ' << b << '\n';
    files.push_back(w);
    files.push_back(b);
  }
  std::ofstream out(dir / files.front(), std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / files.front()).string());
  out << manifest.str();
  return files;
}

Mlp load_mlp(const std::filesystem::path& dir, const std::string& name) {
  const auto path = dir / (name + ".manifest");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::string tag;
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "layers" || count == 0) {
    throw ValidationError(path.string() + ": malformed manifest header");
  }
  Mlp p;
  p.layers.resize(count);
  for (std::size_t k = 0; k < 2 * count; ++k) {
    std::string kind, file;
    std::size_t layer = 0, rows = 0, cols = 0;
    if (!(in >> kind >> layer >> rows >> cols >> file) || layer >= count || (kind != "weight" && kind != "bias")) {
      throw ValidationError(path.string() + ": malformed manifest entry " + std::to_string(k + 1));
    }
    Matrix m = load_matrix(dir / file);
    if (m.rows() != rows || m.cols() != cols) {
      throw ValidationError(file + ": shape " + m.shape_string() + " disagrees with the manifest");
    }
    (kind == "weight" ? p.layers[layer].weight : p.layers[layer].bias) = std::move(m);
  }
  for (std::size_t i = 0; i < count; ++i)
    if (p.layers[i].weight.empty() || p.layers[i].bias.empty())
      throw ValidationError(path.string() + ": layer " + std::to_string(i) + " is incomplete");
  p.validate();
  return p;
}

}  // namespace s3ce
