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


#ifndef S3CE_ADAM_HPP
#define S3CE_ADAM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "s3ce/matrix.hpp"

namespace s3ce {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct Parameter {
  std::string name;
  Matrix value;
};

class AdamState {
 public:
  explicit AdamState(AdamConfig config = {});

  const AdamConfig& config() const { return config_; }
  void set_learning_rate(double lr) { config_.learning_rate = lr; }
  std::uint64_t step_count() const { return step_count_; }
  const Matrix* first_moment(const std::string& name) const;
  const Matrix* second_moment(const std::string& name) const;

 private:
  friend void adam_step(std::span<Parameter>, std::span<const Matrix>, AdamState&);

  AdamConfig config_;
  std::uint64_t step_count_ = 0;
  std::map<std::string, Matrix> first_;
  std::map<std::string, Matrix> second_;
};

// One bias-corrected Adam update of all params. grads[i] pairs with
// params[i]. Any non-finite gradient rejects the whole step (nothing is
// modified) with the offending parameter named.
void adam_step(std::span<Parameter> params, std::span<const Matrix> grads, AdamState& state);

}  // namespace s3ce

#endif  // S3CE_ADAM_HPP
