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


#ifndef S3CE_EIGEN_HPP
#define S3CE_EIGEN_HPP

#include <vector>

#include "s3ce/matrix.hpp"

namespace s3ce {

struct SymEigenResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column i pairs with eigenvalues[i]
};

// Symmetric eigendecomposition. The input must be square with
// max |a_ij - a_ji| <= 1e-10; it is symmetrized by averaging first.
// Each eigenvector column is sign-canonicalized so that its entry of largest
// magnitude is positive (first such entry on ties).
SymEigenResult sym_eig(const Matrix& a);

// Flips column signs in place according to the rule above.
void canonicalize_signs(Matrix& vectors);

}  // namespace s3ce

#endif  // S3CE_EIGEN_HPP
