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


#ifndef S3CE_SELFEXPR_HPP
#define S3CE_SELFEXPR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "s3ce/encoder.hpp"
#include "s3ce/matrix.hpp"
#include "s3ce/tape.hpp"

namespace s3ce {

enum class EntropyMode { kLiteral, kMeanScaled };

const char* entropy_mode_name(EntropyMode mode);
EntropyMode parse_entropy_mode(const std::string& name);

struct ClusterStageConfig {
  double lambda1 = 1.0;
  double lambda2 = 75.0;
  double learning_rate = 1.0e-5;
  std::size_t epochs = 200;
  EntropyMode entropy_mode = EntropyMode::kMeanScaled;
  bool fine_tune_projection = true;
  std::uint64_t seed = 0;

  void validate() const;
};

// Row-stochastic with an exactly zero diagonal.
class CoefficientMatrix {
 public:
  explicit CoefficientMatrix(Matrix c);  // validates
  const Matrix& matrix() const { return c_; }
  std::size_t size() const { return c_.rows(); }

 private:
  Matrix c_;
};

// Symmetric, nonnegative similarity graph.
class Affinity {
 public:
  explicit Affinity(Matrix w);  // validates
  const Matrix& matrix() const { return w_; }
  std::size_t size() const { return w_.rows(); }

 private:
  Matrix w_;
};

// Row softmax over the off-diagonal entries of square logits (n >= 2).
CoefficientMatrix coeff_from_logits(const Matrix& logits);

// S = sum c ln c with 0 ln 0 = 0; literal gives exp(S), mean-scaled exp(S / n).
double entropy_sum(const CoefficientMatrix& c);
double entropy_term(const CoefficientMatrix& c, EntropyMode mode);

// lambda1 ||Z - C Z||_F^2 + lambda2 entropy_term(C). Row i is reconstructed
// as sum_j c_ij z_j.
double selfexpr_loss(const Matrix& z, const CoefficientMatrix& c, double lambda1, double lambda2, EntropyMode mode);

// Tape form, taking the unconstrained logits node.
Var selfexpr_loss(Tape& tape, Var z, Var logits, double lambda1, double lambda2, EntropyMode mode);

// ||Z - C Z||_F^2 / ||Z||_F^2.
double relative_reconstruction_error(const Matrix& z, const CoefficientMatrix& c);

struct CoefficientFit {
  CoefficientMatrix coefficients;
  std::vector<double> loss_history;  // loss before each update, one per epoch
  std::optional<ProjectionParams> projection;
  Matrix z;  // representation at the final parameters
};

// Full-batch Adam over the logits (initialized to zero) and, when a head is
// given and fine-tuning is enabled, the head's parameters. Without a head the
// features are used directly as Z.
CoefficientFit fit_coefficients(const Matrix& features, const std::optional<ProjectionParams>& head,
                                const ClusterStageConfig& cfg);

// W = (|C| + |C^T|) / 2, mirrored so it is exactly symmetric.
Affinity affinity(const Matrix& c);

// Closed-form row minimizer of the entropy-regularized distance objective,
// w_ij proportional to exp(-||x_i - x_j|| / gamma) over j != i.
Matrix ssc_entropy_rows(const Matrix& x, double gamma);
Affinity ssc_entropy_baseline(const Matrix& x, double gamma);

}  // namespace s3ce

#endif  // S3CE_SELFEXPR_HPP
