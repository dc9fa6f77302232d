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


#ifndef S3CE_SYNTH_HPP
#define S3CE_SYNTH_HPP

#include <cstddef>
#include <cstdint>

#include "s3ce/dataset.hpp"

namespace s3ce {

struct SynthConfig {
  std::size_t clusters = 3;          // K
  std::size_t subspace_dim = 2;      // d
  std::size_t ambient_dim = 20;      // D
  std::size_t points_per_cluster = 100;
  double noise_sigma = 0.0;

  void validate() const;
};

// Union of K random d-dimensional linear subspaces of R^D. Each cluster gets
// an orthonormal basis from Gram-Schmidt on a seeded Gaussian D x d matrix;
// points are basis * N(0, I_d) plus noise_sigma * N(0, I_D). Samples are
// grouped by cluster.
LabeledDataset synth_subspaces(const SynthConfig& cfg, std::uint64_t seed);

// Orthonormal columns spanning the same space as `a` (modified
// Gram-Schmidt). Requires full column rank.
Matrix orthonormalize_columns(const Matrix& a);

struct SynthImageConfig {
  std::size_t classes = 10;
  std::size_t per_class = 20;
  std::size_t size = 16;  // square, grayscale
  double noise = 0.05;

  void validate() const;
};

// Procedural grayscale image classes used when no real image files are
// available: each class is a fixed random stroke glyph; samples jitter its
// position by up to one pixel, vary its intensity, and add pixel noise.
LabeledDataset synth_images(const SynthImageConfig& cfg, std::uint64_t seed);

// Exactly `per_class` samples of every class, in a seed-determined order.
LabeledDataset subsample_per_class(const LabeledDataset& ds, std::size_t per_class, std::uint64_t seed);

}  // namespace s3ce

#endif  // S3CE_SYNTH_HPP
