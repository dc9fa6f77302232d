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


#include "s3ce/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "s3ce/eigen.hpp"
#include "s3ce/error.hpp"
#include "s3ce/rng.hpp"

namespace s3ce {

void SpectralConfig::validate() const {
  if (clusters < 2) throw ValidationError("spectral: clusters must be >= 2");
  if (kmeans_restarts < 1) throw ValidationError("spectral: kmeans restarts must be >= 1");
  if (kmeans_max_iters < 1) throw ValidationError("spectral: kmeans max iterations must be >= 1");
  if (!(degree_floor >= 0.0) || !std::isfinite(degree_floor)) throw ValidationError("spectral: degree floor must be >= 0");
}

void ClusterAssignment::validate() const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= k)
      throw ValidationError("cluster assignment: label out of range at index " + std::to_string(i));
}

Matrix normalized_laplacian(const Affinity& w, double degree_floor) {
  if (!(degree_floor >= 0.0)) throw ValidationError("normalized_laplacian: degree floor must be >= 0");
  const Matrix& a = w.matrix();
  const std::size_t n = a.rows();
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += a(i, j);
    if (d == 0.0 && degree_floor == 0.0) throw ValidationError("normalized_laplacian: vertex " + std::to_string(i) + " is isolated");
    inv_sqrt[i] = 1.0 / std::sqrt(std::max(d, degree_floor));
  }
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = (i == j ? 1.0 : 0.0) - inv_sqrt[i] * a(i, j) * inv_sqrt[j];
      l(i, j) = v;
      l(j, i) = v;
    }
  return l;
}

SpectralEmbedding spectral_embed(const Affinity& w, std::size_t k, double degree_floor) {
  const std::size_t n = w.size();
  if (k == 0 || k > n) throw ValidationError("spectral_embed: k = " + std::to_string(k) + " must be in [1, " + std::to_string(n) + "]");
  const SymEigenResult eig = sym_eig(normalized_laplacian(w, degree_floor));
  SpectralEmbedding out{Matrix(n, k), {eig.eigenvalues.begin(), eig.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k)}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (std::size_t c = 0; c < k; ++c) norm += eig.eigenvectors(i, c) * eig.eigenvectors(i, c);
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      out.zero_rows.push_back(i);
      continue;
    }
    for (std::size_t c = 0; c < k; ++c) out.embedding(i, c) = eig.eigenvectors(i, c) / norm;
  }
  return out;
}

namespace {

double sq_dist(const Matrix& p, std::size_t i, const Matrix& c, std::size_t j) {
  double s = 0.0;
  for (std::size_t d = 0; d < p.cols(); ++d) {
    const double t = p(i, d) - c(j, d);
    s += t * t;
  }
  return s;
}

Matrix plus_plus_seeds(const Matrix& p, std::size_t k, Rng& rng) {
  const std::size_t n = p.rows();
  Matrix centers(k, p.cols());
  auto copy_row = [&](std::size_t src, std::size_t dst) {
    for (std::size_t d = 0; d < p.cols(); ++d) centers(dst, d) = p(src, d);
  };
  copy_row(uniform_index(rng, n), 0);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], sq_dist(p, i, centers, c - 1));
      total += nearest[i];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = uniform(rng, 0.0, total);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i];
        if (acc > target && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uniform_index(rng, n);
    }
    copy_row(pick, c);
  }
  return centers;
}

// Nearest center, lowest index on ties.
int nearest_center(const Matrix& p, std::size_t i, const Matrix& centers, double* dist) {
  int best = 0;
  double best_d = sq_dist(p, i, centers, 0);
  for (std::size_t c = 1; c < centers.rows(); ++c) {
    const double d = sq_dist(p, i, centers, c);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

// Means of the assigned points. An empty cluster takes the point farthest
// from its own cluster's mean (each point used at most once).
Matrix update_centers(const Matrix& p, const std::vector<int>& labels, std::size_t k) {
  Matrix centers(k, p.cols());
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    ++counts[static_cast<std::size_t>(labels[i])];
    for (std::size_t d = 0; d < p.cols(); ++d) centers(static_cast<std::size_t>(labels[i]), d) += p(i, d);
  }
  for (std::size_t c = 0; c < k; ++c)
    if (counts[c] > 0)
      for (std::size_t d = 0; d < p.cols(); ++d) centers(c, d) /= static_cast<double>(counts[c]);
  std::vector<bool> taken(p.rows(), false);
  const Matrix means = centers;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
      if (taken[i]) continue;
      const double d = sq_dist(p, i, means, static_cast<std::size_t>(labels[i]));
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    taken[far] = true;
    for (std::size_t d = 0; d < p.cols(); ++d) centers(c, d) = p(far, d);
  }
  return centers;
}

void check_points(const Matrix& points, std::size_t k) {
  if (k < 1) throw ValidationError("kmeans: k must be >= 1");
  if (points.rows() < k) throw ValidationError("kmeans: n = " + std::to_string(points.rows()) + " is smaller than k = " + std::to_string(k));
  if (!points.all_finite()) throw ValidationError("kmeans: points are not finite");
}

bool better(const KMeansResult& a, const KMeansResult& b) {
  return a.inertia < b.inertia || (a.inertia == b.inertia && a.restart < b.restart);
}

}  // namespace

KMeansResult kmeans_once(const Matrix& points, std::size_t k, std::size_t max_iters, std::uint64_t seed) {
  check_points(points, k);
  const std::size_t n = points.rows();
  Rng rng(seed);
  Matrix centers = plus_plus_seeds(points, k, rng);
  KMeansResult out;
  out.assignment.k = k;
  std::vector<int>& labels = out.assignment.labels;
  labels.assign(n, -1);
  std::vector<int> next(n);
  for (std::size_t it = 0; it < max_iters; ++it) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      next[i] = nearest_center(points, i, centers, &d);
      inertia += d;
    }
    out.inertia_trace.push_back(inertia);
    if (next == labels) break;
    labels = next;
    centers = update_centers(points, labels, k);
  }
  double inertia = 0.0;
  const Matrix means = update_centers(points, labels, k);
  for (std::size_t i = 0; i < n; ++i) inertia += sq_dist(points, i, means, static_cast<std::size_t>(labels[i]));
  out.inertia = inertia;
  return out;
}

KMeansResult kmeans_serial(const Matrix& points, const SpectralConfig& cfg) {
  cfg.validate();
  check_points(points, cfg.clusters);
  KMeansResult best;
  for (std::size_t r = 0; r < cfg.kmeans_restarts; ++r) {
    KMeansResult run = kmeans_once(points, cfg.clusters, cfg.kmeans_max_iters, derive_seed(cfg.seed, {r}));
    run.restart = r;
    if (r == 0 || better(run, best)) best = std::move(run);
  }
  return best;
}

KMeansResult kmeans(const Matrix& points, const SpectralConfig& cfg) {
  cfg.validate();
  check_points(points, cfg.clusters);
  std::vector<KMeansResult> runs(cfg.kmeans_restarts);
  const auto restarts = static_cast<std::ptrdiff_t>(cfg.kmeans_restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < restarts; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    runs[ur] = kmeans_once(points, cfg.clusters, cfg.kmeans_max_iters, derive_seed(cfg.seed, {ur}));
    runs[ur].restart = ur;
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (better(runs[r], runs[best])) best = r;
  return std::move(runs[best]);
}

ClusterAssignment spectral_cluster(const Affinity& w, const SpectralConfig& cfg) {
  cfg.validate();
  if (cfg.clusters > w.size()) throw ValidationError("spectral_cluster: more clusters than samples");
  const SpectralEmbedding emb = spectral_embed(w, cfg.clusters, cfg.degree_floor);
  return kmeans(emb.embedding, cfg).assignment;
}

}  // namespace s3ce
