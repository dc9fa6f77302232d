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


#include "s3ce/idx.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "s3ce/error.hpp"

namespace s3ce {

namespace {

std::uint32_t read_be32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ValidationError("short read");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                     static_cast<char>(v)};
  out.write(b, 4);
}

std::vector<unsigned char> read_payload(std::istream& in, std::size_t bytes) {
  std::vector<unsigned char> buf(bytes);
  if (bytes && !in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes))) {
    throw ValidationError("short read");
  }
  return buf;
}

}  // namespace

LabeledDataset read_idx(std::istream& images, std::istream& labels) {
  if (read_be32(images) != kIdxImageMagic) throw ValidationError("not an IDX file");
  if (read_be32(labels) != kIdxLabelMagic) throw ValidationError("not an IDX file");
  const std::uint32_t count = read_be32(images);
  const std::uint32_t rows = read_be32(images);
  const std::uint32_t cols = read_be32(images);
  const std::uint32_t label_count = read_be32(labels);
  if (count != label_count) throw ValidationError("image/label count mismatch");
  if (count == 0 || rows == 0 || cols == 0) throw ValidationError("IDX file has an empty dimension");

  const std::size_t pixels = std::size_t{rows} * cols;
  const auto pixel_bytes = read_payload(images, std::size_t{count} * pixels);
  const auto label_bytes = read_payload(labels, count);

  std::vector<double> values(pixel_bytes.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = pixel_bytes[i] / 255.0;

  LabeledDataset ds;
  ds.samples = Matrix(count, pixels, std::move(values));
  ds.labels = std::vector<int>(label_bytes.begin(), label_bytes.end());
  ds.image = ImageShape{rows, cols, 1};
  ds.validate();
  return ds;
}

LabeledDataset read_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels) {
  std::ifstream img(images, std::ios::binary);
  if (!img) throw ValidationError("cannot open IDX file " + images.string());
  std::ifstream lab(labels, std::ios::binary);
  if (!lab) throw ValidationError("cannot open IDX file " + labels.string());
  return read_idx(img, lab);
}

void write_idx_images(std::ostream& out, const LabeledDataset& ds) {
  if (!ds.image || ds.image->channels != 1) throw ValidationError("IDX export needs grayscale images");
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(ds.size()));
  write_be32(out, static_cast<std::uint32_t>(ds.image->height));
  write_be32(out, static_cast<std::uint32_t>(ds.image->width));
  for (double v : ds.samples.values()) {
    const long b = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
    out.put(static_cast<char>(b));
  }
}

void write_idx_labels(std::ostream& out, const LabeledDataset& ds) {
  if (!ds.labels) throw ValidationError("dataset has no labels");
  write_be32(out, kIdxLabelMagic);
  write_be32(out, static_cast<std::uint32_t>(ds.labels->size()));
  for (int l : *ds.labels) out.put(static_cast<char>(l));
}

}  // namespace s3ce
