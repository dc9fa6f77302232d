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


#ifndef S3CE_ENCODER_HPP
#define S3CE_ENCODER_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "s3ce/adam.hpp"
#include "s3ce/matrix.hpp"
#include "s3ce/tape.hpp"

namespace s3ce {

// Layer widths from input to output; every layer but the last is followed
// by a rectifier.
struct MlpConfig {
  std::vector<std::size_t> widths;

  void validate() const;
  bool operator==(const MlpConfig&) const = default;
};

struct DenseLayer {
  Matrix weight;  // out x in
  Matrix bias;    // 1 x out

  bool operator==(const DenseLayer&) const = default;
};

struct Mlp {
  std::vector<DenseLayer> layers;

  MlpConfig config() const;
  std::size_t input_width() const;
  std::size_t output_width() const;
  void validate() const;  // shapes chain, entries finite
  bool operator==(const Mlp&) const = default;
};

// The encoder f(.) and the two-layer projection head are both MLPs.
using EncoderParams = Mlp;
using ProjectionParams = Mlp;

// Weights uniform in +-sqrt(6 / fan_in), biases zero.
Mlp init_params(const MlpConfig& cfg, std::uint64_t seed);

// Layer-by-layer affine map with rectifiers between layers.
Matrix encode(const Mlp& p, const Matrix& batch);

// encode() restricted to exactly two layers (the projection head).
Matrix project(const Mlp& head, const Matrix& h);

// Tape handles for an MLP's weights and biases.
struct MlpVars {
  std::vector<Var> weights;
  std::vector<Var> biases;
};

// Registers the MLP on the tape, as named parameters ("<prefix>.<i>.weight",
// "<prefix>.<i>.bias") when trainable, otherwise as constants.
MlpVars bind_mlp(Tape& tape, const Mlp& p, const std::string& prefix, bool trainable);

// Same arithmetic as encode(), recorded on the tape.
Var mlp_forward(Tape& tape, const Mlp& p, const MlpVars& vars, Var x);

// Flattening to and from optimizer parameters, with the same naming.
std::vector<Parameter> mlp_parameters(const Mlp& p, const std::string& prefix);
void assign_mlp_parameters(Mlp& p, std::span<const Parameter> params, const std::string& prefix);

// Persistence: <dir>/<name>.manifest lists layers in order with their shape
// and file; each weight/bias is a matrix CSV next to it. Returns the files
// written (manifest first), relative to dir.
std::vector<std::string> save_mlp(const std::filesystem::path& dir, const std::string& name, const Mlp& p);
Mlp load_mlp(const std::filesystem::path& dir, const std::string& name);

}  // namespace s3ce

#endif  // S3CE_ENCODER_HPP
