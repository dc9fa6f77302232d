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


#include "s3ce/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "s3ce/error.hpp"

namespace s3ce {

std::vector<std::size_t> hungarian(const Matrix& cost) {
  if (!cost.is_square()) throw ValidationError("hungarian: cost matrix must be square, got " + cost.shape_string());
  if (!cost.all_finite()) throw ValidationError("hungarian: cost matrix has non-finite entries");
  const std::size_t n = cost.rows();
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based rows/columns; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> result(n);
  for (std::size_t j = 1; j <= n; ++j) result[match[j] - 1] = j - 1;
  return result;
}

double assignment_cost(const Matrix& cost, const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) total += cost(i, assignment[i]);
  return total;
}

namespace {

std::vector<std::size_t> compact(const std::vector<int>& labels, std::size_t* k) {
  std::map<int, std::size_t> ids;
  for (int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  *k = next;
  return out;
}

void check_lengths(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size())
    throw ValidationError("label length mismatch: truth has " + std::to_string(truth.size()) + ", prediction has " + std::to_string(pred.size()));
  if (truth.empty()) throw ValidationError("labels are empty");
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= c / n * std::log(c / n);
  return h;
}

}  // namespace

std::size_t count_distinct(const std::vector<int>& labels) {
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

Matrix contingency(const std::vector<int>& truth, const std::vector<int>& pred) {
  check_lengths(truth, pred);
  std::size_t kt = 0, kp = 0;
  const auto t = compact(truth, &kt);
  const auto p = compact(pred, &kp);
  Matrix counts(kt, kp);
  for (std::size_t i = 0; i < t.size(); ++i) counts(t[i], p[i]) += 1.0;
  return counts;
}

double acc(const std::vector<int>& truth, const std::vector<int>& pred) {
  const Matrix counts = contingency(truth, pred);
  const std::size_t k = std::max(counts.rows(), counts.cols());
  Matrix cost(k, k);
  for (std::size_t i = 0; i < counts.rows(); ++i)
    for (std::size_t j = 0; j < counts.cols(); ++j) cost(i, j) = -counts(i, j);
  const double matched = -assignment_cost(cost, hungarian(cost));
  return matched / static_cast<double>(truth.size());
}

double nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
  const Matrix counts = contingency(truth, pred);
  if (counts.rows() < 2 || counts.cols() < 2) throw ValidationError("degenerate partition: entropy zero");
  const double n = static_cast<double>(truth.size());
  std::vector<double> rows(counts.rows(), 0.0), cols(counts.cols(), 0.0);
  for (std::size_t i = 0; i < counts.rows(); ++i)
    for (std::size_t j = 0; j < counts.cols(); ++j) {
      rows[i] += counts(i, j);
      cols[j] += counts(i, j);
    }
  double mi = 0.0;
  for (std::size_t i = 0; i < counts.rows(); ++i)
    for (std::size_t j = 0; j < counts.cols(); ++j) {
      const double nij = counts(i, j);
      if (nij > 0.0) mi += nij / n * std::log(n * nij / (rows[i] * cols[j]));
    }
  const double value = mi / std::sqrt(entropy(rows, n) * entropy(cols, n));
  return std::clamp(value, 0.0, 1.0);
}

void MetricsReport::validate() const {
  if (!(acc >= 0.0 && acc <= 1.0)) throw ValidationError("metrics: acc outside [0, 1]");
  if (!(nmi >= 0.0 && nmi <= 1.0)) throw ValidationError("metrics: nmi outside [0, 1]");
}

MetricsReport evaluate(const std::vector<int>& truth, const std::vector<int>& pred, std::uint64_t seed) {
  MetricsReport r;
  r.acc = acc(truth, pred);
  r.nmi = nmi(truth, pred);
  r.n = truth.size();
  r.k_true = count_distinct(truth);
  r.k_pred = count_distinct(pred);
  r.seed = seed;
  return r;
}

void write_metrics(std::ostream& out, const MetricsReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", report.acc);
  out << "acc=" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.10f", report.nmi);
  out << "nmi=" << buf << '\n';
  out << "n=" << report.n << '\n';
  out << "k_true=" << report.k_true << '\n';
  out << "k_pred=" << report.k_pred << '\n';
  out << "seed=" << report.seed << '\n';
}

MetricsReport read_metrics(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("metrics: malformed line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError(std::string("metrics: missing key '") + key + "'");
    return it->second;
  };
  MetricsReport r;
  try {
    r.acc = std::stod(get("acc"));
    r.nmi = std::stod(get("nmi"));
    r.n = std::stoull(get("n"));
    r.k_true = std::stoull(get("k_true"));
    r.k_pred = std::stoull(get("k_pred"));
    r.seed = std::stoull(get("seed"));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(std::string("metrics: bad value: ") + e.what());
  }
  r.validate();
  return r;
}

void save_metrics(const std::filesystem::path& path, const MetricsReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_metrics(out, report);
}

MetricsReport load_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_metrics(in);
}

}  // namespace s3ce
