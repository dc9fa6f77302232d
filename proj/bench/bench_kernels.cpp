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


// Serial reference kernels against their OpenMP counterparts. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "s3ce/augment.hpp"
#include "s3ce/kernels.hpp"
#include "s3ce/rng.hpp"
#include "s3ce/spectral.hpp"
#include "s3ce/synth.hpp"

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  s3ce::Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = s3ce::uniform(rng, -1.0, 1.0);
  return v;
}

template <void (*Gemm)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t)>
void BM_gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_values(n * n, 1), b = random_values(n * n, 2);
  std::vector<double> c(n * n);
  for (auto _ : state) {
    Gemm(a.data(), b.data(), c.data(), n, n, n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n * n * n));
}

template <void (*Dist)(const double*, double*, std::size_t, std::size_t)>
void BM_pairwise(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 32;
  const auto x = random_values(n * dim, 3);
  std::vector<double> d(n * n);
  for (auto _ : state) {
    Dist(x.data(), d.data(), n, dim);
    benchmark::DoNotOptimize(d.data());
  }
}

template <bool Parallel>
void BM_kmeans(benchmark::State& state) {
  s3ce::Rng rng(4);
  s3ce::Matrix points(static_cast<std::size_t>(state.range(0)), 8);
  for (double& v : points.values()) v = s3ce::uniform(rng, -1.0, 1.0);
  s3ce::SpectralConfig cfg;
  cfg.clusters = 8;
  for (auto _ : state) {
    auto r = Parallel ? s3ce::kmeans(points, cfg) : s3ce::kmeans_serial(points, cfg);
    benchmark::DoNotOptimize(r.inertia);
  }
}

template <bool Parallel>
void BM_view_batch(benchmark::State& state) {
  s3ce::SynthImageConfig sc;
  sc.per_class = 26;
  sc.size = 28;
  const s3ce::LabeledDataset ds = s3ce::synth_images(sc, 5);
  std::vector<std::size_t> idx(static_cast<std::size_t>(state.range(0)));
  std::iota(idx.begin(), idx.end(), 0);
  const s3ce::AugmentConfig cfg;
  for (auto _ : state) {
    auto m = Parallel ? s3ce::make_view_batch(ds, idx, cfg, 6) : s3ce::make_view_batch_serial(ds, idx, cfg, 6);
    benchmark::DoNotOptimize(m.data());
  }
}

}  // namespace

BENCHMARK(BM_gemm<s3ce::kernels::serial::gemm_nn>)->Name("gemm_nn/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_gemm<s3ce::kernels::parallel::gemm_nn>)->Name("gemm_nn/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_gemm<s3ce::kernels::serial::gemm_nt>)->Name("gemm_nt/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_gemm<s3ce::kernels::parallel::gemm_nt>)->Name("gemm_nt/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_gemm<s3ce::kernels::serial::gemm_tn>)->Name("gemm_tn/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_gemm<s3ce::kernels::parallel::gemm_tn>)->Name("gemm_tn/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_pairwise<s3ce::kernels::serial::pairwise_dist>)->Name("pairwise_dist/serial")->Arg(256)->Arg(1000);
BENCHMARK(BM_pairwise<s3ce::kernels::parallel::pairwise_dist>)->Name("pairwise_dist/parallel")->Arg(256)->Arg(1000);
BENCHMARK(BM_kmeans<false>)->Name("kmeans_restarts/serial")->Arg(1000);
BENCHMARK(BM_kmeans<true>)->Name("kmeans_restarts/parallel")->Arg(1000);
BENCHMARK(BM_view_batch<false>)->Name("view_batch/serial")->Arg(128);
BENCHMARK(BM_view_batch<true>)->Name("view_batch/parallel")->Arg(128);

BENCHMARK_MAIN();
