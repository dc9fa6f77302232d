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


#include "s3ce/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "s3ce/error.hpp"
#include "s3ce/rng.hpp"

namespace s3ce {

void SynthConfig::validate() const {
  if (clusters < 2) throw ValidationError("synth: clusters must be >= 2");
  if (subspace_dim < 1) throw ValidationError("synth: subspace_dim must be >= 1");
  if (subspace_dim >= ambient_dim) throw ValidationError("synth: subspace_dim must be < ambient_dim");
  if (points_per_cluster < subspace_dim + 1) throw ValidationError("synth: points_per_cluster must be >= subspace_dim + 1");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw ValidationError("synth: noise_sigma must be >= 0");
}

Matrix orthonormalize_columns(const Matrix& a) {
  Matrix q = a;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t r = 0; r < q.rows(); ++r) dot += q(r, i) * q(r, j);
      for (std::size_t r = 0; r < q.rows(); ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < q.rows(); ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw ValidationError("orthonormalize_columns: matrix is rank deficient");
    for (std::size_t r = 0; r < q.rows(); ++r) q(r, j) /= norm;
  }
  return q;
}

LabeledDataset synth_subspaces(const SynthConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t n = cfg.clusters * cfg.points_per_cluster;
  Matrix x(n, cfg.ambient_dim);
  std::vector<int> labels(n);
  Rng rng(seed);
  std::size_t row = 0;
  for (std::size_t k = 0; k < cfg.clusters; ++k) {
    Matrix g(cfg.ambient_dim, cfg.subspace_dim);
    for (double& v : g.values()) v = normal(rng);
    const Matrix basis = orthonormalize_columns(g);
    std::vector<double> coeff(cfg.subspace_dim);
    for (std::size_t p = 0; p < cfg.points_per_cluster; ++p, ++row) {
      for (double& c : coeff) c = normal(rng);
      for (std::size_t r = 0; r < cfg.ambient_dim; ++r) {
        double v = 0.0;
        for (std::size_t c = 0; c < cfg.subspace_dim; ++c) v += basis(r, c) * coeff[c];
        x(row, r) = v;
      }
      if (cfg.noise_sigma > 0.0)
        for (std::size_t r = 0; r < cfg.ambient_dim; ++r) x(row, r) += cfg.noise_sigma * normal(rng);
      labels[row] = static_cast<int>(k);
    }
  }
  LabeledDataset ds{std::move(x), std::move(labels), std::nullopt};
  ds.validate();
  return ds;
}

void SynthImageConfig::validate() const {
  if (classes < 2) throw ValidationError("synth_images: classes must be >= 2");
  if (per_class < 1) throw ValidationError("synth_images: per_class must be >= 1");
  if (size < 8) throw ValidationError("synth_images: size must be >= 8");
  if (!(noise >= 0.0)) throw ValidationError("synth_images: noise must be >= 0");
}

namespace {

struct Stroke {
  double x0, y0, x1, y1;
};

double segment_distance(double px, double py, const Stroke& s) {
  const double dx = s.x1 - s.x0;
  const double dy = s.y1 - s.y0;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = s.x0 + t * dx - px;
  const double ey = s.y0 + t * dy - py;
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

LabeledDataset synth_images(const SynthImageConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  constexpr std::size_t kStrokes = 3;
  constexpr double kWidth = 0.9;
  const double lo = 2.0;
  const double hi = static_cast<double>(cfg.size) - 3.0;

  Rng glyph_rng(derive_seed(seed, {0}));
  std::vector<std::array<Stroke, kStrokes>> glyphs(cfg.classes);
  for (auto& g : glyphs)
    for (auto& s : g)
      s = Stroke{uniform(glyph_rng, lo, hi), uniform(glyph_rng, lo, hi), uniform(glyph_rng, lo, hi),
                 uniform(glyph_rng, lo, hi)};

  const std::size_t n = cfg.classes * cfg.per_class;
  const std::size_t pixels = cfg.size * cfg.size;
  Matrix x(n, pixels);
  std::vector<int> labels(n);
  Rng rng(derive_seed(seed, {1}));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i % cfg.classes;
    labels[i] = static_cast<int>(k);
    const double sx = uniform(rng, -1.0, 1.0);
    const double sy = uniform(rng, -1.0, 1.0);
    const double gain = uniform(rng, 0.7, 1.0);
    for (std::size_t y = 0; y < cfg.size; ++y) {
      for (std::size_t xx = 0; xx < cfg.size; ++xx) {
        double v = 0.0;
        for (const Stroke& s : glyphs[k]) {
          const double d = segment_distance(static_cast<double>(xx) - sx, static_cast<double>(y) - sy, s);
          v = std::max(v, std::exp(-d * d / (2.0 * kWidth * kWidth)));
        }
        v = gain * v + cfg.noise * normal(rng);
        x(i, y * cfg.size + xx) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  LabeledDataset ds{std::move(x), std::move(labels), ImageShape{cfg.size, cfg.size, 1}};
  ds.validate();
  return ds;
}

namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace

LabeledDataset subsample_per_class(const LabeledDataset& ds, std::size_t per_class, std::uint64_t seed) {
  if (!ds.labels) throw ValidationError("subsample_per_class needs labels");
  if (per_class == 0) throw ValidationError("subsample_per_class: per-class count must be >= 1");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < ds.size(); ++i) by_class[(*ds.labels)[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> picked;
  for (auto& [label, idx] : by_class) {
    if (idx.size() < per_class) {
      throw ValidationError("class " + std::to_string(label) + " has " + std::to_string(idx.size()) +
                            " samples, fewer than " + std::to_string(per_class));
    }
    shuffle(idx, rng);
    picked.insert(picked.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  shuffle(picked, rng);

  LabeledDataset out;
  out.samples = gather_rows(ds.samples, picked);
  std::vector<int> labels;
  for (std::size_t i : picked) labels.push_back((*ds.labels)[i]);
  out.labels = std::move(labels);
  out.image = ds.image;
  return out;
}

}  // namespace s3ce
