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


#ifndef S3CE_KERNELS_HPP
#define S3CE_KERNELS_HPP

#include <cstddef>

namespace s3ce::kernels {

// Raw row-major kernels. Every output element is accumulated in the same
// order by the serial and parallel variants, so their results are
// bit-identical and independent of the thread count.
//
//   gemm_nn: C[m×n] = A[m×k] · B[k×n]
//   gemm_nt: C[m×n] = A[m×k] · B[n×k]^T
//   gemm_tn: C[m×n] = A[k×m]^T · B[k×n]
//   pairwise_dist: D[n×n], D_ij = ||x_i − x_j||_2 for X[n×d]
namespace serial {
void gemm_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void pairwise_dist(const double* x, double* d, std::size_t n, std::size_t dim);
}  // namespace serial

namespace parallel {
void gemm_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
void pairwise_dist(const double* x, double* d, std::size_t n, std::size_t dim);
}  // namespace parallel

int max_threads();

}  // namespace s3ce::kernels

#endif  // S3CE_KERNELS_HPP
