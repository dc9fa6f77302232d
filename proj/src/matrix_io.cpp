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


#include "s3ce/matrix_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "s3ce/error.hpp"

namespace s3ce {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

double parse_real(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ValidationError(where + ": cannot parse number '" + token + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_real(m(r, c));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rows;
    const std::string where = source + ":" + std::to_string(rows);
    std::size_t count = 0;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      values.push_back(parse_real(token, where));
      ++count;
    }
    if (rows == 1) {
      cols = count;
    } else if (count != cols) {
      throw ValidationError(where + ": expected " + std::to_string(cols) + " columns, got " +
                            std::to_string(count));
    }
  }
  if (rows == 0) throw ValidationError(source + ": empty matrix file");
  return Matrix(rows, cols, std::move(values));
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_out(path);
  write_matrix_csv(out, m);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Matrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_csv(in, path.string());
}

void write_labels_csv(std::ostream& out, const std::vector<int>& labels) {
  for (int l : labels) out << l << '\n';
}

std::vector<int> read_labels_csv(std::istream& in, const std::string& source) {
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    char* end = nullptr;
    const long v = std::strtol(line.c_str(), &end, 10);
    if (end == line.c_str() || *end != '\0' || v < 0 || v > 1'000'000) {
      throw ValidationError(source + ":" + std::to_string(lineno) + ": bad label '" + line + "'");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

void save_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  write_labels_csv(out, labels);
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels_csv(in, path.string());
}

void save_loss_history(const std::filesystem::path& path, const std::vector<double>& history) {
  auto out = open_out(path);
  for (std::size_t e = 0; e < history.size(); ++e) out << (e + 1) << ',' << format_real(history[e]) << '\n';
}

std::vector<double> load_loss_history(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> history;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError(path.string() + ": malformed loss row");
    history.push_back(parse_real(line.substr(comma + 1), path.string()));
  }
  return history;
}

}  // namespace s3ce
