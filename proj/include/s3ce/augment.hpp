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


#ifndef S3CE_AUGMENT_HPP
#define S3CE_AUGMENT_HPP

#include <cstdint>
#include <span>
#include <utility>

#include "s3ce/dataset.hpp"
#include "s3ce/rng.hpp"

namespace s3ce {

// Transform chain, applied in this fixed order when enabled:
// crop -> flip -> rotation -> jitter -> grayscale -> blur.
struct AugmentConfig {
  std::size_t output_size = 0;  // square output side; 0 keeps the input size
  double crop_scale_lo = 0.5;   // fraction of the image area
  double crop_scale_hi = 1.0;
  double rotation_max_degrees = 15.0;
  double jitter_strength = 0.4;
  double blur_sigma_lo = 0.1;
  double blur_sigma_hi = 1.0;
  double grayscale_probability = 0.2;
  double flip_probability = 0.5;

  bool enable_crop = true;
  bool enable_flip = true;
  bool enable_rotation = true;
  bool enable_jitter = true;
  bool enable_grayscale = true;
  bool enable_blur = true;

  void validate() const;
  // Also rejects crop windows that would shrink below 1x1 on `input`.
  void validate_for(const ImageShape& input) const;
  ImageShape output_shape(const ImageShape& input) const;
};

AugmentConfig augmentations_disabled();

// Bilinear resize with edge clamping (pixel-center aligned).
Image resize_bilinear(const Image& img, std::size_t height, std::size_t width);
Image flip_horizontal(const Image& img);

// One random draw of the transform chain.
Image augment(const Image& img, const AugmentConfig& cfg, Rng& rng);

// Two views from independent draws of the chain; output values in [0,1].
std::pair<Image, Image> augment_pair(const Image& img, const AugmentConfig& cfg, Rng& rng);

// Views for a batch, interleaved so rows (2k, 2k+1) are the two views of
// samples[indices[k]]. Sample k draws from derive_seed(seed, {indices[k]}),
// so the result does not depend on the thread count.
Matrix make_view_batch(const LabeledDataset& ds, std::span<const std::size_t> indices, const AugmentConfig& cfg,
                       std::uint64_t seed);
Matrix make_view_batch_serial(const LabeledDataset& ds, std::span<const std::size_t> indices,
                              const AugmentConfig& cfg, std::uint64_t seed);

// Un-augmented inputs for the clustering stage: every image resized to the
// augmentation output size, flattened. Non-image datasets pass through.
Matrix clustering_inputs(const LabeledDataset& ds, const AugmentConfig& cfg);

}  // namespace s3ce

#endif  // S3CE_AUGMENT_HPP
