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


#ifndef S3CE_DATASET_HPP
#define S3CE_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "s3ce/matrix.hpp"

namespace s3ce {

struct ImageShape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 1;  // 1 (grayscale) or 3 (RGB, channel-planar)

  std::size_t pixels() const { return height * width * channels; }
  bool operator==(const ImageShape&) const = default;
};

// One image, channel-planar: value(c, y, x) = values[(c * height + y) * width + x].
struct Image {
  ImageShape shape;
  std::vector<double> values;

  Image() = default;
  explicit Image(ImageShape s) : shape(s), values(s.pixels(), 0.0) {}
  Image(ImageShape s, std::vector<double> v);

  double& at(std::size_t c, std::size_t y, std::size_t x) { return values[(c * shape.height + y) * shape.width + x]; }
  double at(std::size_t c, std::size_t y, std::size_t x) const {
    return values[(c * shape.height + y) * shape.width + x];
  }
  bool operator==(const Image&) const = default;
};

// A batch of equally shaped images stored sample-major.
struct ImageBatch {
  std::size_t count = 0;
  ImageShape shape;
  std::vector<double> values;

  Image image(std::size_t i) const;
  void validate() const;  // values in [0,1], sizes consistent
};

// Samples as matrix rows plus optional ground truth in [0, K). When the
// samples are flattened images, `image` records their shape.
struct LabeledDataset {
  Matrix samples;
  std::optional<std::vector<int>> labels;
  std::optional<ImageShape> image;

  std::size_t size() const { return samples.rows(); }
  std::size_t num_classes() const;  // 0 without labels
  Image image_at(std::size_t i) const;
  ImageBatch images() const;

  // Label length, range, every class in [0, K) present; image shape matches
  // the sample width.
  void validate() const;
};

}  // namespace s3ce

#endif  // S3CE_DATASET_HPP
