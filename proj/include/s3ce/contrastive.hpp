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


#ifndef S3CE_CONTRASTIVE_HPP
#define S3CE_CONTRASTIVE_HPP

#include <cstdint>
#include <vector>

#include "s3ce/augment.hpp"
#include "s3ce/dataset.hpp"
#include "s3ce/encoder.hpp"
#include "s3ce/matrix.hpp"
#include "s3ce/tape.hpp"

namespace s3ce {

struct PretrainConfig {
  double temperature = 0.5;
  std::size_t batch_size = 64;  // N samples -> 2N views
  std::size_t epochs = 50;
  double learning_rate = 3.0e-4;
  std::uint64_t seed = 0;

  void validate() const;
};

// s_ij = <z_i, z_j> / (||z_i|| ||z_j||); unit diagonal, entries in [-1, 1].
Matrix cosine_sim_matrix(const Matrix& z);

// l(i, j) = -log( exp(s_ij / T) / sum_{k != i} exp(s_ik / T) ). Only the
// self term is left out of the denominator; the positive stays in.
double nt_xent_pair(const Matrix& s, std::size_t i, std::size_t j, double temperature);

// Mean of l over both orderings of every positive pair. Rows (2k, 2k+1) are
// the two views of sample k; at least two samples (four rows) are needed.
double pretrain_loss(const Matrix& z, double temperature);

// The same loss recorded on a tape from the fixed primitive set.
Var pretrain_loss(Tape& tape, Var z, double temperature);

struct PretrainResult {
  EncoderParams encoder;
  ProjectionParams projection;
  std::vector<double> loss_history;  // mean batch loss per epoch
};

// Contrastive pre-training with Adam over augmented view pairs. The encoder
// input width is the augmentation output size; `encoder_hidden` and
// `projection_hidden` list the widths after it (e.g. {512, 128} and {64, 32}).
PretrainResult pretrain(const LabeledDataset& ds, const std::vector<std::size_t>& encoder_hidden,
                        const std::vector<std::size_t>& projection_hidden, const AugmentConfig& augment,
                        const PretrainConfig& cfg);

}  // namespace s3ce

#endif  // S3CE_CONTRASTIVE_HPP
