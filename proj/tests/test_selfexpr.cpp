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

#include "doctest.h"
#include "s3ce/error.hpp"
#include "s3ce/selfexpr.hpp"
#include "s3ce/synth.hpp"
#include "support.hpp"

using namespace s3ce;
using s3ce::testing::random_matrix;

namespace {

Matrix uniform_coefficients(std::size_t n) {
  Matrix c(n, n, 1.0 / static_cast<double>(n - 1));
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 0.0;
  return c;
}

Matrix random_coefficients(Rng& rng, std::size_t n) {
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) total += c(i, j) = uniform(rng, 0.01, 1.0);
    for (std::size_t j = 0; j < n; ++j) c(i, j) /= total;
  }
  return c;
}

}  // namespace

TEST_CASE("coeff_from_logits hand cases") {
  CHECK(coeff_from_logits(Matrix(3, 3)).matrix() == uniform_coefficients(3));

  Matrix a(3, 3);
  a(0, 1) = 1.0;
  const Matrix c = coeff_from_logits(a).matrix();
  CHECK(c(0, 0) == 0.0);
  CHECK(c(0, 1) == doctest::Approx(0.7310585786300049).epsilon(1e-14));
  CHECK(c(0, 2) == doctest::Approx(0.2689414213699951).epsilon(1e-14));

  Matrix sat(4, 4);
  sat(2, 0) = 1000.0;
  const Matrix cs = coeff_from_logits(sat).matrix();
  CHECK(std::abs(cs(2, 0) - 1.0) <= 1e-12);
  CHECK(cs(2, 1) <= 1e-12);
  CHECK(cs(2, 3) <= 1e-12);

  CHECK_THROWS_AS(coeff_from_logits(Matrix(1, 1)), ValidationError);
  CHECK_THROWS_AS(coeff_from_logits(Matrix(2, 3)), ValidationError);
}

TEST_CASE("property: coefficient invariants hold for any finite logits") {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 9);
    Matrix a = random_matrix(rng, n, n, -5.0, 5.0);
    for (double& v : a.values())
      if (uniform(rng, 0.0, 1.0) < 0.2) v = uniform(rng, 0.0, 1.0) < 0.5 ? -1000.0 : 1000.0;
    const Matrix c = coeff_from_logits(a).matrix();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(c(i, i) == 0.0);
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(c(i, j) >= 0.0);
        CHECK(c(i, j) <= 1.0);
        row += c(i, j);
      }
      CHECK(std::abs(row - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("CoefficientMatrix and Affinity reject invalid matrices") {
  CHECK_THROWS_AS(CoefficientMatrix(Matrix{{0.5, 0.5}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(CoefficientMatrix(Matrix{{0, 0.9}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(CoefficientMatrix(Matrix{{0, 1, 0}, {1.5, 0, -0.5}, {0.5, 0.5, 0}}), ValidationError);
  CHECK_NOTHROW(CoefficientMatrix(Matrix{{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(Affinity(Matrix{{0, 1}, {0.5, 0}}), ValidationError);
  CHECK_THROWS_AS(Affinity(Matrix{{0, -1}, {-1, 0}}), ValidationError);
}

TEST_CASE("entropy term examples") {
  const CoefficientMatrix u3(uniform_coefficients(3));
  CHECK(entropy_sum(u3) == doctest::Approx(-3.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(entropy_term(u3, EntropyMode::kLiteral) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(entropy_term(u3, EntropyMode::kMeanScaled) == doctest::Approx(0.5).epsilon(1e-14));

  Matrix a(3, 3);
  a(0, 1) = a(1, 2) = a(2, 0) = 40.0;
  const CoefficientMatrix peaked = coeff_from_logits(a);
  CHECK(entropy_term(peaked, EntropyMode::kLiteral) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy_term(CoefficientMatrix(Matrix{{0, 1}, {1, 0}}), EntropyMode::kLiteral) == 1.0);
}

TEST_CASE("property: uniform literal entropy is (n-1)^-n and values stay in (0, 1]") {
  for (std::size_t n = 2; n <= 9; ++n) {
    const CoefficientMatrix u(uniform_coefficients(n));
    const double expected = std::pow(static_cast<double>(n - 1), -static_cast<double>(n));
    CHECK(entropy_term(u, EntropyMode::kLiteral) == doctest::Approx(expected).epsilon(1e-12));
  }
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const CoefficientMatrix c = coeff_from_logits(random_matrix(rng, 6, 6, -4.0, 4.0));
    for (EntropyMode mode : {EntropyMode::kLiteral, EntropyMode::kMeanScaled}) {
      const double e = entropy_term(c, mode);
      CHECK(e > 0.0);
      CHECK(e <= 1.0);
    }
  }
}

TEST_CASE("selfexpr_loss examples") {
  SUBCASE("two duplicated points reduce to lambda2") {
    const Matrix z{{1, 2, 3}, {1, 2, 3}};
    const CoefficientMatrix c = coeff_from_logits(Matrix(2, 2));
    CHECK(c.matrix() == Matrix{{0, 1}, {1, 0}});
    CHECK(selfexpr_loss(z, c, 1.0, 75.0, EntropyMode::kLiteral) == doctest::Approx(75.0).epsilon(1e-14));
  }
  SUBCASE("no reconstruction weight, uniform rows") {
    Rng rng(2);
    const Matrix z = random_matrix(rng, 3, 4);
    CHECK(selfexpr_loss(z, CoefficientMatrix(uniform_coefficients(3)), 0.0, 8.0, EntropyMode::kLiteral) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(selfexpr_loss(Matrix(3, 2), CoefficientMatrix(uniform_coefficients(4)), 1, 1, EntropyMode::kLiteral),
                    ValidationError);
  }
}

TEST_CASE("selfexpr_loss matches term-by-term evaluation") {
  Rng rng(66);
  const Matrix z = random_matrix(rng, 6, 4);
  const Matrix c = random_coefficients(rng, 6);
  double recon = 0.0, s = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t d = 0; d < 4; ++d) {
      double r = z(i, d);
      for (std::size_t j = 0; j < 6; ++j) r -= c(i, j) * z(j, d);
      recon += r * r;
    }
    for (std::size_t j = 0; j < 6; ++j)
      if (c(i, j) > 0.0) s += c(i, j) * std::log(c(i, j));
  }
  const CoefficientMatrix cm(c);
  CHECK(std::abs(selfexpr_loss(z, cm, 1.0, 75.0, EntropyMode::kLiteral) - (recon + 75.0 * std::exp(s))) <= 1e-12);
  CHECK(std::abs(selfexpr_loss(z, cm, 0.3, 2.0, EntropyMode::kMeanScaled) - (0.3 * recon + 2.0 * std::exp(s / 6.0))) <= 1e-12);
}

TEST_CASE("tape loss agrees with the direct evaluation") {
  Rng rng(9);
  const Matrix z = random_matrix(rng, 5, 3);
  const Matrix a = random_matrix(rng, 5, 5, -2.0, 2.0);
  for (EntropyMode mode : {EntropyMode::kLiteral, EntropyMode::kMeanScaled}) {
    Tape tape;
    const Var loss = selfexpr_loss(tape, tape.constant(z), tape.constant(a), 1.0, 75.0, mode);
    CHECK(tape.scalar(loss) == doctest::Approx(selfexpr_loss(z, coeff_from_logits(a), 1.0, 75.0, mode)).epsilon(1e-13));
  }
}

TEST_CASE("property: loss gradients match finite differences") {
  Rng rng(31);
  for (std::size_t n : {2, 4, 6, 8}) {
    for (EntropyMode mode : {EntropyMode::kLiteral, EntropyMode::kMeanScaled}) {
      const auto check = s3ce::testing::check_gradients(
          {{"logits", random_matrix(rng, n, n, -2.0, 2.0)}, {"z", random_matrix(rng, n, 4)}},
          [mode](Tape& tape, const std::map<std::string, Var>& v) {
            return selfexpr_loss(tape, v.at("z"), v.at("logits"), 1.0, 75.0, mode);
          });
      CAPTURE(n);
      CAPTURE(entropy_mode_name(mode));
      CHECK(check.worst_relative_error <= 1e-4);
    }
  }
}

TEST_CASE("fit_coefficients with zero epochs keeps the uniform start") {
  Rng rng(1);
  ClusterStageConfig cfg;
  cfg.epochs = 0;
  const CoefficientFit fit = fit_coefficients(random_matrix(rng, 5, 3), std::nullopt, cfg);
  CHECK(fit.coefficients.matrix() == uniform_coefficients(5));
  CHECK(fit.loss_history.empty());
}

TEST_CASE("fit_coefficients is deterministic and tunes the head") {
  Rng rng(12);
  const Matrix h = random_matrix(rng, 12, 6);
  const ProjectionParams head = init_params(MlpConfig{{6, 5, 3}}, 3);
  ClusterStageConfig cfg;
  cfg.epochs = 20;
  cfg.learning_rate = 0.01;
  const CoefficientFit a = fit_coefficients(h, head, cfg);
  const CoefficientFit b = fit_coefficients(h, head, cfg);
  CHECK(a.loss_history.size() == 20);
  CHECK(a.loss_history == b.loss_history);
  CHECK(a.coefficients.matrix() == b.coefficients.matrix());
  REQUIRE(a.projection.has_value());
  CHECK(*a.projection != head);
  CHECK(a.z == project(*a.projection, h));

  cfg.fine_tune_projection = false;
  const CoefficientFit frozen = fit_coefficients(h, head, cfg);
  CHECK(*frozen.projection == head);
  CHECK(frozen.loss_history != a.loss_history);

  CHECK_THROWS_AS(fit_coefficients(random_matrix(rng, 12, 4), head, cfg), ValidationError);
}

TEST_CASE("fit_coefficients reconstructs noise-free subspaces") {
  SynthConfig sc;
  sc.points_per_cluster = 100;
  const LabeledDataset ds = synth_subspaces(sc, 5);
  ClusterStageConfig cfg;
  cfg.learning_rate = 0.05;
  cfg.epochs = 300;
  cfg.entropy_mode = EntropyMode::kLiteral;
  const CoefficientFit fit = fit_coefficients(ds.samples, std::nullopt, cfg);
  const double err = relative_reconstruction_error(ds.samples, fit.coefficients);
  MESSAGE("relative reconstruction error " << err);
  CHECK(err <= 0.05);
  CHECK(fit.loss_history.back() < fit.loss_history.front());
}

TEST_CASE("cluster config validation") {
  ClusterStageConfig cfg;
  cfg.lambda1 = 0.0;
  cfg.lambda2 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = ClusterStageConfig{};
  cfg.lambda1 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(parse_entropy_mode("literal") == EntropyMode::kLiteral);
  CHECK_THROWS_AS(parse_entropy_mode("log"), ValidationError);
}

TEST_CASE("affinity examples and properties") {
  CHECK(affinity(Matrix{{0, 1}, {1, 0}}).matrix() == Matrix{{0, 1}, {1, 0}});
  const Matrix w = affinity(Matrix{{0, 0.4}, {0.8, 0}}).matrix();
  CHECK(w(0, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(w(1, 0) == w(0, 1));
  CHECK(affinity(Matrix{{0, -0.4}, {0.8, 0}}).matrix()(0, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(affinity(Matrix(2, 3)), ValidationError);

  Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix c = random_matrix(rng, 7, 7);
    const Matrix a = affinity(c).matrix();
    CHECK(max_asymmetry(a) == 0.0);
    for (double v : a.values()) CHECK(v >= 0.0);
    CHECK(affinity(a).matrix() == a);
  }
}

TEST_CASE("ssc entropy baseline examples") {
  const double h = std::sqrt(3.0) / 2.0;
  const Matrix tri{{0, 0}, {1, 0}, {0.5, h}};
  for (double gamma : {0.1, 1.0, 10.0}) {
    const Matrix rows = ssc_entropy_rows(tri, gamma);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(rows(i, j) == doctest::Approx(i == j ? 0.0 : 0.5).epsilon(1e-12));
  }
  Rng rng(3);
  const Matrix x = random_matrix(rng, 6, 3);
  const Matrix flat = ssc_entropy_rows(x, 1e9);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) CHECK(flat(i, j) == doctest::Approx(0.2).epsilon(1e-8));
  CHECK_THROWS_AS(ssc_entropy_rows(x, 0.0), ValidationError);
  CHECK_THROWS_AS(ssc_entropy_rows(Matrix(1, 2), 1.0), ValidationError);
}

TEST_CASE("ssc entropy baseline matches a projected-gradient minimizer") {
  Rng rng(2024);
  const Matrix x = random_matrix(rng, 5, 2, 0.0, 1.0);
  const Matrix rows = ssc_entropy_rows(x, 1.0);
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == i) continue;
      const double dx = x(i, 0) - x(j, 0), dy = x(i, 1) - x(j, 1);
      d.push_back(std::sqrt(dx * dx + dy * dy));
    }
    const std::vector<double> w = s3ce::testing::entropy_row_by_projected_gradient(d, 1.0, 100000, 1e-3);
    std::size_t k = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == i) continue;
      CHECK(std::abs(rows(i, j) - w[k++]) <= 1e-4);
    }
  }
}

TEST_CASE("property: ssc entropy rows are stochastic and rigid-motion invariant") {
  Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = random_matrix(rng, 6, 2);
    const Matrix rows = ssc_entropy_rows(x, 0.5);
    for (std::size_t i = 0; i < 6; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < 6; ++j) total += rows(i, j);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
    const double angle = uniform(rng, 0.0, 6.283185307179586);
    const double tx = uniform(rng, -5.0, 5.0), ty = uniform(rng, -5.0, 5.0);
    Matrix moved(6, 2);
    for (std::size_t i = 0; i < 6; ++i) {
      moved(i, 0) = std::cos(angle) * x(i, 0) - std::sin(angle) * x(i, 1) + tx;
      moved(i, 1) = std::sin(angle) * x(i, 0) + std::cos(angle) * x(i, 1) + ty;
    }
    CHECK(max_abs_diff(ssc_entropy_rows(moved, 0.5), rows) <= 1e-12);
  }
}
