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


#include "s3ce/contrastive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "s3ce/adam.hpp"
#include "s3ce/error.hpp"
#include "s3ce/ops.hpp"
#include "s3ce/rng.hpp"

namespace s3ce {

namespace {

void require_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("temperature must be > 0");
}

void require_pairs(std::size_t rows) {
  if (rows % 2 != 0) throw ValidationError("contrastive loss needs an even number of rows, got " + std::to_string(rows));
  if (rows < 4) throw ValidationError("contrastive loss needs N >= 2 samples (at least one negative)");
}

}  // namespace

void PretrainConfig::validate() const {
  require_temperature(temperature);
  if (batch_size < 2) throw ValidationError("pretrain: batch size must be >= 2");
  if (!(learning_rate > 0.0)) throw ValidationError("pretrain: learning rate must be > 0");
}

Matrix cosine_sim_matrix(const Matrix& z) {
  const Matrix u = row_normalize(z);
  Matrix s = matmul_nt(u, u);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) = std::clamp(s(i, j), -1.0, 1.0);
    s(i, i) = 1.0;
  }
  return s;
}

double nt_xent_pair(const Matrix& s, std::size_t i, std::size_t j, double temperature) {
  require_temperature(temperature);
  if (!s.is_square()) throw ValidationError("nt_xent_pair: similarity matrix must be square");
  if (i >= s.rows() || j >= s.rows() || i == j) throw ValidationError("nt_xent_pair: need distinct in-range i, j");
  // Logits relative to the positive. When the positive is the row maximum the
  // loss is log1p of the remaining mass, which keeps it positive as T -> 0.
  const double pos = s(i, j) / temperature;
  double mx = 0.0;
  for (std::size_t k = 0; k < s.cols(); ++k)
    if (k != i && k != j) mx = std::max(mx, s(i, k) / temperature - pos);
  double rest = 0.0;
  for (std::size_t k = 0; k < s.cols(); ++k)
    if (k != i && k != j) rest += std::exp(s(i, k) / temperature - pos - mx);
  if (mx == 0.0) return std::log1p(rest);
  return mx + std::log(std::exp(-mx) + rest);
}

double pretrain_loss(const Matrix& z, double temperature) {
  require_temperature(temperature);
  require_pairs(z.rows());
  const Matrix s = cosine_sim_matrix(z);
  double total = 0.0;
  for (std::size_t k = 0; k < z.rows(); k += 2) {
    total += nt_xent_pair(s, k, k + 1, temperature) + nt_xent_pair(s, k + 1, k, temperature);
  }
  return total / static_cast<double>(z.rows());
}

Var pretrain_loss(Tape& tape, Var z, double temperature) {
  require_temperature(temperature);
  const std::size_t rows = tape.value(z).rows();
  require_pairs(rows);
  Matrix positives(rows, rows);
  for (std::size_t k = 0; k < rows; k += 2) {
    positives(k, k + 1) = 1.0;
    positives(k + 1, k) = 1.0;
  }
  const Var unit = tape.row_normalize(z);
  const Var sim = tape.matmul(unit, unit, false, true);
  const Var prob = tape.row_softmax(tape.scale(sim, 1.0 / temperature), true);
  const Var positive_prob = tape.matmul(tape.hadamard(prob, tape.constant(positives)), tape.constant(Matrix::ones(rows, 1)));
  return tape.scale(tape.sum(tape.log(positive_prob)), -1.0 / static_cast<double>(rows));
}

PretrainResult pretrain(const LabeledDataset& ds, const std::vector<std::size_t>& encoder_hidden,
                        const std::vector<std::size_t>& projection_hidden, const AugmentConfig& augment,
                        const PretrainConfig& cfg) {
  cfg.validate();
  ds.validate();
  if (ds.size() < 2) throw ValidationError("pretrain: dataset needs at least 2 samples");
  if (ds.image) augment.validate_for(*ds.image);
  if (encoder_hidden.empty() || projection_hidden.empty()) throw ValidationError("pretrain: empty layer widths");

  const std::size_t input_width = ds.image ? augment.output_shape(*ds.image).pixels() : ds.samples.cols();
  MlpConfig enc_cfg{{input_width}};
  enc_cfg.widths.insert(enc_cfg.widths.end(), encoder_hidden.begin(), encoder_hidden.end());
  MlpConfig proj_cfg{{enc_cfg.widths.back()}};
  proj_cfg.widths.insert(proj_cfg.widths.end(), projection_hidden.begin(), projection_hidden.end());
  if (proj_cfg.widths.size() != 3) throw ValidationError("pretrain: projection head must have two layers");

  PretrainResult result{init_params(enc_cfg, derive_seed(cfg.seed, {10})),
                        init_params(proj_cfg, derive_seed(cfg.seed, {11})), {}};

  std::vector<Parameter> params = mlp_parameters(result.encoder, "encoder");
  for (auto& p : mlp_parameters(result.projection, "projection")) params.push_back(std::move(p));
  AdamState adam(AdamConfig{cfg.learning_rate});

  std::vector<std::size_t> order(ds.size());
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(cfg.seed, {1, epoch}));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, order.size() - start);
      if (count < 2) break;
      const std::span<const std::size_t> batch(order.data() + start, count);
      const Matrix views = make_view_batch(ds, batch, augment, derive_seed(cfg.seed, {2, epoch}));

      Tape tape;
      std::vector<Var> vars;
      for (const Parameter& p : params) vars.push_back(tape.parameter(p.name, p.value));
      const std::size_t enc_params = 2 * result.encoder.layers.size();
      MlpVars enc_vars, proj_vars;
      for (std::size_t i = 0; i < vars.size(); i += 2) {
        MlpVars& target = i < enc_params ? enc_vars : proj_vars;
        target.weights.push_back(vars[i]);
        target.biases.push_back(vars[i + 1]);
      }
      const Var h = mlp_forward(tape, result.encoder, enc_vars, tape.constant(views));
      const Var z = mlp_forward(tape, result.projection, proj_vars, h);
      for (std::size_t r = 0; r < tape.value(z).rows(); ++r) {
        bool zero = true;
        for (std::size_t c = 0; c < tape.value(z).cols() && zero; ++c) zero = tape.value(z)(r, c) == 0.0;
        if (zero)
          throw ValidationError("pretrain: projection output is zero for view row " + std::to_string(r) + " in epoch " +
                                std::to_string(epoch) + " (no active hidden units); widen the encoder or projection head");
      }
      const Var loss = pretrain_loss(tape, z, cfg.temperature);
      tape.backward(loss);

      std::vector<Matrix> grads;
      for (Var v : vars) grads.push_back(tape.grad(v));
      adam_step(params, grads, adam);
      epoch_loss += tape.scalar(loss);
      ++batches;
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(batches));
    assign_mlp_parameters(result.encoder, params, "encoder");
    assign_mlp_parameters(result.projection, params, "projection");
  }
  return result;
}

}  // namespace s3ce
