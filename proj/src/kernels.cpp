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


#include "s3ce/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace s3ce::kernels {

namespace {

// Row-level bodies shared by both variants so the per-element summation
// order cannot drift between them.
inline void gemm_nn_row(const double* a, const double* b, double* c, std::size_t i, std::size_t k,
                        std::size_t n) {
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
  const double* ai = a + i * k;
  for (std::size_t p = 0; p < k; ++p) {
    const double aip = ai[p];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
  }
}

inline void gemm_nt_row(const double* a, const double* b, double* c, std::size_t i, std::size_t k,
                        std::size_t n) {
  const double* ai = a + i * k;
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) {
    const double* bj = b + j * k;
    double acc = 0.0;
    for (std::size_t p = 0; p < k; ++p) acc += ai[p] * bj[p];
    ci[j] = acc;
  }
}

inline void gemm_tn_row(const double* a, const double* b, double* c, std::size_t i, std::size_t m,
                        std::size_t k, std::size_t n) {
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    const double api = a[p * m + i];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += api * bp[j];
  }
}

inline void dist_row(const double* x, double* d, std::size_t i, std::size_t n, std::size_t dim) {
  const double* xi = x + i * dim;
  for (std::size_t j = 0; j < n; ++j) {
    const double* xj = x + j * dim;
    double acc = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      const double t = xi[p] - xj[p];
      acc += t * t;
    }
    d[i * n + j] = std::sqrt(acc);
  }
}

}  // namespace

namespace serial {

void gemm_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) gemm_nn_row(a, b, c, i, k, n);
}

void gemm_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) gemm_nt_row(a, b, c, i, k, n);
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) gemm_tn_row(a, b, c, i, m, k, n);
}

void pairwise_dist(const double* x, double* d, std::size_t n, std::size_t dim) {
  for (std::size_t i = 0; i < n; ++i) dist_row(x, d, i, n, dim);
}

}  // namespace serial

namespace parallel {

void gemm_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  const auto rows = static_cast<long long>(m);
#pragma omp parallel for schedule(static) if (m * k * n > 32768)
  for (long long i = 0; i < rows; ++i) gemm_nn_row(a, b, c, static_cast<std::size_t>(i), k, n);
}

void gemm_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  const auto rows = static_cast<long long>(m);
#pragma omp parallel for schedule(static) if (m * k * n > 32768)
  for (long long i = 0; i < rows; ++i) gemm_nt_row(a, b, c, static_cast<std::size_t>(i), k, n);
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  const auto rows = static_cast<long long>(m);
#pragma omp parallel for schedule(static) if (m * k * n > 32768)
  for (long long i = 0; i < rows; ++i) gemm_tn_row(a, b, c, static_cast<std::size_t>(i), m, k, n);
}

void pairwise_dist(const double* x, double* d, std::size_t n, std::size_t dim) {
  const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (n * n * dim > 32768)
  for (long long i = 0; i < rows; ++i) dist_row(x, d, static_cast<std::size_t>(i), n, dim);
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace s3ce::kernels
