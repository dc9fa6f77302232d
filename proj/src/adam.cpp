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


#include "s3ce/adam.hpp"

#include <cmath>

#include "s3ce/error.hpp"

namespace s3ce {

AdamState::AdamState(AdamConfig config) : config_(config) {
  if (!(config_.learning_rate >= 0.0)) throw ValidationError("adam: learning rate must be >= 0");
  if (!(config_.beta1 >= 0.0 && config_.beta1 < 1.0) || !(config_.beta2 >= 0.0 && config_.beta2 < 1.0)) {
    throw ValidationError("adam: betas must lie in [0, 1)");
  }
  if (!(config_.epsilon > 0.0)) throw ValidationError("adam: epsilon must be > 0");
}

const Matrix* AdamState::first_moment(const std::string& name) const {
  auto it = first_.find(name);
  return it == first_.end() ? nullptr : &it->second;
}

const Matrix* AdamState::second_moment(const std::string& name) const {
  auto it = second_.find(name);
  return it == second_.end() ? nullptr : &it->second;
}

void adam_step(std::span<Parameter> params, std::span<const Matrix> grads, AdamState& state) {
  if (params.size() != grads.size()) {
    throw ValidationError("adam: " + std::to_string(params.size()) + " parameters but " +
                          std::to_string(grads.size()) + " gradients");
  }
  // Validate everything before touching any state.
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Parameter& p = params[i];
    if (p.value.rows() != grads[i].rows() || p.value.cols() != grads[i].cols()) {
      throw ValidationError("adam: gradient shape " + grads[i].shape_string() + " does not match parameter '" +
                            p.name + "' " + p.value.shape_string());
    }
    if (!grads[i].all_finite()) throw ValidationError("adam: non-finite gradient for parameter '" + p.name + "'");
    if (const Matrix* m = state.first_moment(p.name);
        m && (m->rows() != p.value.rows() || m->cols() != p.value.cols())) {
      throw ValidationError("adam: state shape for parameter '" + p.name + "' does not match");
    }
  }

  const AdamConfig& c = state.config_;
  const auto t = static_cast<double>(++state.step_count_);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);

  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter& p = params[i];
    const Matrix& g = grads[i];
    auto [m_it, m_new] = state.first_.try_emplace(p.name, p.value.rows(), p.value.cols());
    auto [v_it, v_new] = state.second_.try_emplace(p.name, p.value.rows(), p.value.cols());
    Matrix& m = m_it->second;
    Matrix& v = v_it->second;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double gk = g.data()[k];
      m.data()[k] = c.beta1 * m.data()[k] + (1.0 - c.beta1) * gk;
      v.data()[k] = c.beta2 * v.data()[k] + (1.0 - c.beta2) * gk * gk;
      const double m_hat = m.data()[k] / bc1;
      const double v_hat = v.data()[k] / bc2;
      p.value.data()[k] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace s3ce
