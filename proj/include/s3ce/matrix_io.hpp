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


#ifndef S3CE_MATRIX_IO_HPP
#define S3CE_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "s3ce/matrix.hpp"

namespace s3ce {

// Matrix CSV: one row per line, comma separated, every value in scientific
// notation with 17 significant digits, no header. write -> read -> write is
// byte-identical.
std::string format_real(double v);
void write_matrix_csv(std::ostream& out, const Matrix& m);
Matrix read_matrix_csv(std::istream& in, const std::string& source = "<stream>");
void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

// Label CSV: one integer per line.
void write_labels_csv(std::ostream& out, const std::vector<int>& labels);
std::vector<int> read_labels_csv(std::istream& in, const std::string& source = "<stream>");
void save_labels(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> load_labels(const std::filesystem::path& path);

// Loss history CSV: "epoch,loss" rows, epochs 1-based, no header.
void save_loss_history(const std::filesystem::path& path, const std::vector<double>& history);
std::vector<double> load_loss_history(const std::filesystem::path& path);

}  // namespace s3ce

#endif  // S3CE_MATRIX_IO_HPP
