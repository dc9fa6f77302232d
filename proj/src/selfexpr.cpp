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


#include "s3ce/selfexpr.hpp"

#include <cmath>
#include <string>

#include "s3ce/adam.hpp"
#include "s3ce/error.hpp"
#include "s3ce/kernels.hpp"
#include "s3ce/ops.hpp"

namespace s3ce {

const char* entropy_mode_name(EntropyMode mode) {
  return mode == EntropyMode::kLiteral ? "literal" : "mean-scaled";
}

EntropyMode parse_entropy_mode(const std::string& name) {
  if (name == "literal") return EntropyMode::kLiteral;
  if (name == "mean-scaled") return EntropyMode::kMeanScaled;
  throw ValidationError("unknown entropy mode '" + name + "' (expected literal or mean-scaled)");
}

void ClusterStageConfig::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw ValidationError("cluster: lambda1 and lambda2 must be >= 0");
  if (!(lambda1 > 0.0 || lambda2 > 0.0)) throw ValidationError("cluster: lambda1 or lambda2 must be > 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ValidationError("cluster: learning rate must be > 0");
}

CoefficientMatrix::CoefficientMatrix(Matrix c) : c_(std::move(c)) {
  if (!c_.is_square() || c_.rows() < 2) throw ValidationError("coefficient matrix must be square with n >= 2, got " + c_.shape_string());
  for (std::size_t i = 0; i < c_.rows(); ++i) {
    if (c_(i, i) != 0.0) throw ValidationError("coefficient matrix: nonzero diagonal at row " + std::to_string(i));
    double row = 0.0;
    for (std::size_t j = 0; j < c_.cols(); ++j) {
      const double v = c_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("coefficient matrix: entry outside [0, 1] at row " + std::to_string(i));
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-12) throw ValidationError("coefficient matrix: row " + std::to_string(i) + " does not sum to 1");
  }
}

Affinity::Affinity(Matrix w) : w_(std::move(w)) {
  if (!w_.is_square()) throw ValidationError("affinity must be square, got " + w_.shape_string());
  if (!w_.all_finite()) throw ValidationError("affinity has non-finite entries");
  if (max_asymmetry(w_) > 1e-12) throw ValidationError("affinity is not symmetric");
  for (double v : w_.values())
    if (v < 0.0) throw ValidationError("affinity has a negative entry");
}

CoefficientMatrix coeff_from_logits(const Matrix& logits) {
  if (!logits.is_square() || logits.rows() < 2) throw ValidationError("coefficient logits must be square with n >= 2, got " + logits.shape_string());
  return CoefficientMatrix(row_softmax(logits, true));
}

double entropy_sum(const CoefficientMatrix& c) {
  double s = 0.0;
  for (double v : c.matrix().values())
    if (v > 0.0) s += v * std::log(v);
  return s;
}

double entropy_term(const CoefficientMatrix& c, EntropyMode mode) {
  const double s = entropy_sum(c);
  return mode == EntropyMode::kLiteral ? std::exp(s) : std::exp(s / static_cast<double>(c.size()));
}

double selfexpr_loss(const Matrix& z, const CoefficientMatrix& c, double lambda1, double lambda2, EntropyMode mode) {
  if (z.rows() != c.size()) throw ValidationError("selfexpr_loss: Z has " + std::to_string(z.rows()) + " rows but C is " + c.matrix().shape_string());
  const double recon = frobenius_sq(z - matmul(c.matrix(), z));
  return lambda1 * recon + lambda2 * entropy_term(c, mode);
}

Var selfexpr_loss(Tape& tape, Var z, Var logits, double lambda1, double lambda2, EntropyMode mode) {
  const std::size_t n = tape.value(logits).rows();
  if (tape.value(z).rows() != n) throw ValidationError("selfexpr_loss: Z and logits disagree on n");
  const Var c = tape.row_softmax(logits, true);
  const Var recon = tape.frobenius_sq(tape.subtract(z, tape.matmul(c, z)));
  // Entries that are exactly zero (the diagonal, or underflow) get 1 added
  // inside the log so they contribute 0 * ln 1.
  Matrix zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) zeros(i, j) = tape.value(c)(i, j) == 0.0 ? 1.0 : 0.0;
  const Var s = tape.sum(tape.hadamard(c, tape.log(tape.add(c, tape.constant(zeros)))));
  const Var ent = tape.exp(mode == EntropyMode::kLiteral ? s : tape.scale(s, 1.0 / static_cast<double>(n)));
  return tape.add(tape.scale(recon, lambda1), tape.scale(ent, lambda2));
}

double relative_reconstruction_error(const Matrix& z, const CoefficientMatrix& c) {
  const double denom = frobenius_sq(z);
  if (denom == 0.0) throw ValidationError("relative_reconstruction_error: Z is zero");
  return frobenius_sq(z - matmul(c.matrix(), z)) / denom;
}

CoefficientFit fit_coefficients(const Matrix& features, const std::optional<ProjectionParams>& head,
                                const ClusterStageConfig& cfg) {
  cfg.validate();
  const std::size_t n = features.rows();
  if (n < 2) throw ValidationError("fit_coefficients: need n >= 2 samples");
  if (!features.all_finite()) throw ValidationError("fit_coefficients: features are not finite");
  if (head) {
    head->validate();
    if (head->input_width() != features.cols())
      throw ValidationError("fit_coefficients: head expects width " + std::to_string(head->input_width()) + ", features have " + std::to_string(features.cols()));
  }
  const bool tune_head = head && cfg.fine_tune_projection;

  std::vector<Parameter> params{{"logits", Matrix(n, n)}};
  if (tune_head)
    for (auto& p : mlp_parameters(*head, "projection")) params.push_back(std::move(p));
  AdamState adam(AdamConfig{cfg.learning_rate});
  std::optional<ProjectionParams> current = head;

  CoefficientFit fit{coeff_from_logits(params[0].value), {}, current, head ? project(*head, features) : features};
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Tape tape;
    std::vector<Var> vars;
    for (const Parameter& p : params) vars.push_back(tape.parameter(p.name, p.value));
    Var z = tape.constant(features);
    if (current) {
      MlpVars hv = tune_head ? MlpVars{} : bind_mlp(tape, *current, "projection", false);
      for (std::size_t i = 1; tune_head && i < vars.size(); i += 2) {
        hv.weights.push_back(vars[i]);
        hv.biases.push_back(vars[i + 1]);
      }
      z = mlp_forward(tape, *current, hv, z);
    }
    const Var loss = selfexpr_loss(tape, z, vars[0], cfg.lambda1, cfg.lambda2, cfg.entropy_mode);
    tape.backward(loss);
    std::vector<Matrix> grads;
    for (Var v : vars) grads.push_back(tape.grad(v));
    fit.loss_history.push_back(tape.scalar(loss));
    adam_step(params, grads, adam);
    if (tune_head) assign_mlp_parameters(*current, params, "projection");
  }
  fit.coefficients = coeff_from_logits(params[0].value);
  fit.projection = current;
  fit.z = current ? project(*current, features) : features;
  return fit;
}

Affinity affinity(const Matrix& c) {
  if (!c.is_square()) throw ValidationError("affinity: C must be square, got " + c.shape_string());
  const std::size_t n = c.rows();
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = 0.5 * (std::abs(c(i, j)) + std::abs(c(j, i)));
      w(i, j) = v;
      w(j, i) = v;
    }
  return Affinity(std::move(w));
}

Matrix ssc_entropy_rows(const Matrix& x, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("ssc_entropy_baseline: gamma must be > 0");
  const std::size_t n = x.rows();
  if (n < 2) throw ValidationError("ssc_entropy_baseline: need n >= 2 points");
  Matrix d(n, n);
  kernels::parallel::pairwise_dist(x.data(), d.data(), n, x.cols());
  return row_softmax((-1.0 / gamma) * d, true);
}

Affinity ssc_entropy_baseline(const Matrix& x, double gamma) { return affinity(ssc_entropy_rows(x, gamma)); }

}  // namespace s3ce
