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


#ifndef S3CE_IDX_HPP
#define S3CE_IDX_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "s3ce/dataset.hpp"

namespace s3ce {

inline constexpr std::uint32_t kIdxImageMagic = 2051;  // 00 00 08 03
inline constexpr std::uint32_t kIdxLabelMagic = 2049;  // 00 00 08 01

// Big-endian IDX image + label files (the MNIST container). Pixels are
// mapped to [0,1] by division by 255; labels are copied verbatim.
LabeledDataset read_idx(std::istream& images, std::istream& labels);
LabeledDataset read_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels);

// Debug re-serialization. Pixels are written as round(255 * v), so a
// dataset produced by read_idx reproduces its payload bytes exactly.
void write_idx_images(std::ostream& out, const LabeledDataset& ds);
void write_idx_labels(std::ostream& out, const LabeledDataset& ds);

}  // namespace s3ce

#endif  // S3CE_IDX_HPP
