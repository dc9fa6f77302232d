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


#include "s3ce/ops.hpp"

#include <cmath>
#include <limits>

#include "s3ce/error.hpp"

namespace s3ce {

Matrix relu(const Matrix& a) {
  Matrix c = a;
  for (double& v : c.values()) v = v > 0.0 ? v : 0.0;
  return c;
}

Matrix exp(const Matrix& a) {
  Matrix c = a;
  for (double& v : c.values()) v = std::exp(v);
  return c;
}

Matrix log(const Matrix& a) {
  Matrix c = a;
  for (double& v : c.values()) v = std::log(v);
  return c;
}

Matrix row_softmax(const Matrix& a, bool exclude_diagonal) {
  if (exclude_diagonal) {
    if (!a.is_square()) {
      throw ValidationError("masked row softmax needs a square input, got " + a.shape_string());
    }
    if (a.rows() < 2) throw ValidationError("masked row softmax needs n >= 2 (no off-diagonal support)");
  }
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (exclude_diagonal && i == j) continue;
      mx = std::max(mx, a(i, j));
    }
    double z = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (exclude_diagonal && i == j) continue;
      const double e = std::exp(a(i, j) - mx);
      c(i, j) = e;
      z += e;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) /= z;
  }
  return c;
}

Matrix row_normalize(const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double ss = 0.0;
    for (double v : a.row(i)) ss += v * v;
    if (!(ss > 0.0)) throw ValidationError("row " + std::to_string(i) + " has zero norm");
    const double norm = std::sqrt(ss);
    for (double& v : c.row(i)) v /= norm;
  }
  return c;
}

}  // namespace s3ce
