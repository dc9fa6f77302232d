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


#ifndef S3CE_OPS_HPP
#define S3CE_OPS_HPP

#include "s3ce/matrix.hpp"

namespace s3ce {

// Elementwise and row-wise maps shared by the gradient tape and the
// off-tape code paths.
Matrix relu(const Matrix& a);
Matrix exp(const Matrix& a);
Matrix log(const Matrix& a);

// Max-subtracted softmax of every row. With exclude_diagonal the input must
// be square with n >= 2; entry (i, i) is left out of row i's support and set
// to exactly 0.
Matrix row_softmax(const Matrix& a, bool exclude_diagonal = false);

// Divides each row by its L2 norm. A zero row is rejected, naming its index.
Matrix row_normalize(const Matrix& a);

}  // namespace s3ce

#endif  // S3CE_OPS_HPP
