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


#ifndef S3CE_METRICS_HPP
#define S3CE_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "s3ce/matrix.hpp"

namespace s3ce {

// Minimum-cost perfect assignment for a square cost matrix: result[i] is
// the column given to row i. Shortest augmenting paths with potentials, O(K^3).
std::vector<std::size_t> hungarian(const Matrix& cost);
double assignment_cost(const Matrix& cost, const std::vector<std::size_t>& assignment);

// Counts n_ij of (truth class i, predicted cluster j) after compacting both
// label sets to 0..k-1 in ascending label order.
Matrix contingency(const std::vector<int>& truth, const std::vector<int>& pred);

// Best one-to-one matching of clusters to classes, as a fraction of n.
double acc(const std::vector<int>& truth, const std::vector<int>& pred);

// Mutual information over the geometric mean of the two entropies (natural
// log). A partition with a single label is rejected.
double nmi(const std::vector<int>& truth, const std::vector<int>& pred);

std::size_t count_distinct(const std::vector<int>& labels);

struct MetricsReport {
  double acc = 0.0;
  double nmi = 0.0;
  std::size_t n = 0;
  std::size_t k_true = 0;
  std::size_t k_pred = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

MetricsReport evaluate(const std::vector<int>& truth, const std::vector<int>& pred, std::uint64_t seed);

// key=value lines in the fixed order acc, nmi, n, k_true, k_pred, seed.
void write_metrics(std::ostream& out, const MetricsReport& report);
MetricsReport read_metrics(std::istream& in);
void save_metrics(const std::filesystem::path& path, const MetricsReport& report);
MetricsReport load_metrics(const std::filesystem::path& path);

}  // namespace s3ce

#endif  // S3CE_METRICS_HPP
