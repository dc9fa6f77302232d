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


#include "s3ce/dataset.hpp"

#include <algorithm>

#include "s3ce/error.hpp"

namespace s3ce {

Image::Image(ImageShape s, std::vector<double> v) : shape(s), values(std::move(v)) {
  if (values.size() != shape.pixels()) throw ValidationError("image value count does not match its shape");
}

Image ImageBatch::image(std::size_t i) const {
  if (i >= count) throw ValidationError("image index out of range");
  const std::size_t p = shape.pixels();
  return Image(shape, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(i * p),
                                          values.begin() + static_cast<std::ptrdiff_t>((i + 1) * p)));
}

void ImageBatch::validate() const {
  if (shape.channels != 1 && shape.channels != 3) throw ValidationError("images need 1 or 3 channels");
  if (count * shape.pixels() != values.size()) throw ValidationError("image batch size does not match its shape");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("image values must lie in [0,1]");
}

std::size_t LabeledDataset::num_classes() const {
  if (!labels || labels->empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels->begin(), labels->end())) + 1;
}

Image LabeledDataset::image_at(std::size_t i) const {
  if (!image) throw ValidationError("dataset samples are not images");
  if (i >= size()) throw ValidationError("sample index out of range");
  auto row = samples.row(i);
  return Image(*image, std::vector<double>(row.begin(), row.end()));
}

ImageBatch LabeledDataset::images() const {
  if (!image) throw ValidationError("dataset samples are not images");
  return ImageBatch{size(), *image, samples.values()};
}

void LabeledDataset::validate() const {
  if (samples.empty()) throw ValidationError("dataset has no samples");
  if (image) {
    if (image->channels != 1 && image->channels != 3) throw ValidationError("images need 1 or 3 channels");
    if (image->pixels() != samples.cols()) {
      throw ValidationError("image shape has " + std::to_string(image->pixels()) + " values but samples have " +
                            std::to_string(samples.cols()) + " columns");
    }
  }
  if (!labels) return;
  if (labels->size() != samples.rows()) {
    throw ValidationError("dataset has " + std::to_string(samples.rows()) + " samples but " +
                          std::to_string(labels->size()) + " labels");
  }
  const std::size_t k = num_classes();
  std::vector<std::size_t> counts(k, 0);
  for (int l : *labels) {
    if (l < 0) throw ValidationError("labels must be non-negative");
    ++counts[static_cast<std::size_t>(l)];
  }
  for (std::size_t c = 0; c < k; ++c)
    if (counts[c] == 0) throw ValidationError("class " + std::to_string(c) + " has no samples");
}

}  // namespace s3ce
