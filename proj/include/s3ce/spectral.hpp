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


#ifndef S3CE_SPECTRAL_HPP
#define S3CE_SPECTRAL_HPP

#include <cstdint>
#include <vector>

#include "s3ce/matrix.hpp"
#include "s3ce/selfexpr.hpp"

namespace s3ce {

struct SpectralConfig {
  std::size_t clusters = 2;
  std::size_t kmeans_restarts = 20;
  std::size_t kmeans_max_iters = 300;
  double degree_floor = 1e-12;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ClusterAssignment {
  std::vector<int> labels;  // values in [0, k)
  std::size_t k = 0;

  void validate() const;
};

// L = I - D^-1/2 W D^-1/2, degrees clamped below at degree_floor. With a zero
// floor an isolated vertex is rejected.
Matrix normalized_laplacian(const Affinity& w, double degree_floor);

struct SpectralEmbedding {
  Matrix embedding;                 // n x k, rows unit length (or zero)
  std::vector<double> eigenvalues;  // the k smallest, ascending
  std::vector<std::size_t> zero_rows;
};

// Eigenvectors of the k smallest Laplacian eigenvalues, rows normalized.
SpectralEmbedding spectral_embed(const Affinity& w, std::size_t k, double degree_floor = 1e-12);

struct KMeansResult {
  ClusterAssignment assignment;
  double inertia = 0.0;
  std::vector<double> inertia_trace;  // winning restart, one entry per Lloyd step
  std::size_t restart = 0;
};

// One k-means++ seeded Lloyd run.
KMeansResult kmeans_once(const Matrix& points, std::size_t k, std::size_t max_iters, std::uint64_t seed);

// Best of cfg.kmeans_restarts runs by (inertia, restart index). Restart r is
// seeded with derive_seed(cfg.seed, {r}). Restarts run concurrently.
KMeansResult kmeans(const Matrix& points, const SpectralConfig& cfg);
KMeansResult kmeans_serial(const Matrix& points, const SpectralConfig& cfg);

ClusterAssignment spectral_cluster(const Affinity& w, const SpectralConfig& cfg);

}  // namespace s3ce

#endif  // S3CE_SPECTRAL_HPP
