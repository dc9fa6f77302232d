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


#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "s3ce/error.hpp"
#include "s3ce/metrics.hpp"
#include "support.hpp"

using namespace s3ce;
using s3ce::testing::random_matrix;

namespace {

double brute_force_min(const Matrix& cost) {
  std::vector<std::size_t> perm(cost.rows());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do best = std::min(best, assignment_cost(cost, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<int> random_labels(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i < k ? i : uniform_index(rng, k));
  return out;
}

std::vector<int> relabel(const std::vector<int>& labels, const std::vector<int>& names) {
  std::vector<int> out;
  for (int l : labels) out.push_back(names[static_cast<std::size_t>(l)]);
  return out;
}

}  // namespace

TEST_CASE("hungarian hand cases") {
  const Matrix a{{0, 1}, {1, 0}};
  CHECK(hungarian(a) == std::vector<std::size_t>{0, 1});
  CHECK(assignment_cost(a, hungarian(a)) == 0.0);
  const Matrix b{{1, 0}, {0, 1}};
  CHECK(hungarian(b) == std::vector<std::size_t>{1, 0});
  CHECK(assignment_cost(b, hungarian(b)) == 0.0);
  CHECK_THROWS_AS(hungarian(Matrix(2, 3)), ValidationError);
}

TEST_CASE("hungarian equals exhaustive search on random 5x5 costs") {
  Rng rng(500);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix cost = random_matrix(rng, 5, 5, -10.0, 10.0);
    const auto perm = hungarian(cost);
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(std::abs(assignment_cost(cost, perm) - brute_force_min(cost)) <= 1e-12);
  }
}

TEST_CASE("property: hungarian is optimal for K up to 6 and beats the identity") {
  Rng rng(501);
  for (std::size_t k = 1; k <= 6; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix cost = random_matrix(rng, k, k, 0.0, 5.0);
      // Integer costs force ties.
      if (trial % 2 == 0)
        for (double& v : cost.values()) v = std::floor(v);
      const double total = assignment_cost(cost, hungarian(cost));
      std::vector<std::size_t> identity(k);
      std::iota(identity.begin(), identity.end(), 0);
      CHECK(total <= assignment_cost(cost, identity) + 1e-12);
      CHECK(std::abs(total - brute_force_min(cost)) <= 1e-12);
    }
  }
}

TEST_CASE("acc examples") {
  CHECK(acc({0, 1, 2, 2}, {0, 1, 2, 2}) == 1.0);
  CHECK(acc({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);
  CHECK(acc({0, 0, 1, 1}, {0, 1, 1, 1}) == 0.75);
  CHECK(acc({0, 0, 1, 1, 2, 2}, {5, 5, 5, 5, 5, 5}) == doctest::Approx(1.0 / 3.0));
  CHECK(acc({0, 0, 1, 1}, {0, 1, 2, 3}) == 0.5);
  CHECK_THROWS_AS(acc({0, 1}, {0}), ValidationError);
  CHECK_THROWS_AS(acc({}, {}), ValidationError);
}

TEST_CASE("acc matches the permutation oracle") {
  Rng rng(502);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + uniform_index(rng, 4);
    const auto truth = random_labels(rng, 30, k);
    const auto pred = random_labels(rng, 30, k);
    CHECK(acc(truth, pred) == doctest::Approx(s3ce::testing::brute_force_accuracy(truth, pred, static_cast<int>(k))).epsilon(1e-15));
  }
}

TEST_CASE("nmi examples") {
  CHECK(nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(nmi({0, 0, 1, 1}, {0, 1, 0, 1})) <= 1e-12);
  CHECK(nmi({0, 0, 1, 1}, {0, 0, 0, 1}) == doctest::Approx(0.3455920299442113).epsilon(1e-13));
  try {
    nmi({0, 0, 1, 1}, {3, 3, 3, 3});
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "degenerate partition: entropy zero");
  }
  CHECK_THROWS_AS(nmi({2, 2}, {0, 1}), ValidationError);
}

TEST_CASE("nmi matches the count-based oracle") {
  Rng rng(503);
  for (int trial = 0; trial < 100; ++trial) {
    const auto truth = random_labels(rng, 40, 2 + uniform_index(rng, 4));
    const auto pred = random_labels(rng, 40, 2 + uniform_index(rng, 4));
    CHECK(nmi(truth, pred) == doctest::Approx(s3ce::testing::reference_nmi(truth, pred)).epsilon(1e-12));
  }
}

TEST_CASE("property: relabeling invariance, symmetry and bounds") {
  Rng rng(504);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t kt = 2 + uniform_index(rng, 4), kp = 2 + uniform_index(rng, 4);
    const auto truth = random_labels(rng, 25, kt);
    const auto pred = random_labels(rng, 25, kp);
    std::vector<int> names(kp);
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);
    for (int& v : names) v = 10 * v - 7;
    const auto renamed = relabel(pred, names);
    CHECK(acc(truth, renamed) == acc(truth, pred));
    CHECK(nmi(truth, renamed) == doctest::Approx(nmi(truth, pred)).epsilon(1e-14));
    CHECK(nmi(pred, truth) == doctest::Approx(nmi(truth, pred)).epsilon(1e-14));
    const double a = acc(truth, pred), m = nmi(truth, pred);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
  }
}

TEST_CASE("property: constant prediction on balanced truth gets at least 1/k") {
  for (std::size_t k = 2; k <= 6; ++k) {
    std::vector<int> truth;
    for (std::size_t i = 0; i < 6 * k; ++i) truth.push_back(static_cast<int>(i % k));
    CHECK(acc(truth, std::vector<int>(truth.size(), 0)) >= 1.0 / static_cast<double>(k) - 1e-15);
  }
}

TEST_CASE("metrics report round trip") {
  const MetricsReport r = evaluate({0, 0, 1, 1}, {0, 0, 0, 1}, 42);
  CHECK(r.acc == 0.75);
  CHECK(r.n == 4);
  CHECK(r.k_true == 2);
  CHECK(r.k_pred == 2);
  std::stringstream ss;
  write_metrics(ss, r);
  CHECK(ss.str() == "acc=0.7500000000\nnmi=0.3455920299\nn=4\nk_true=2\nk_pred=2\nseed=42\n");
  const MetricsReport back = read_metrics(ss);
  CHECK(back.acc == 0.75);
  CHECK(back.nmi == doctest::Approx(r.nmi).epsilon(1e-9));
  CHECK(back.seed == 42);
  std::stringstream bad("acc=2\nnmi=0.5\nn=1\nk_true=1\nk_pred=1\nseed=0\n");
  CHECK_THROWS_AS(read_metrics(bad), ValidationError);
  std::stringstream missing("acc=0.5\n");
  CHECK_THROWS_AS(read_metrics(missing), ValidationError);
}
