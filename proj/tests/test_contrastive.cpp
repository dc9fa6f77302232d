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
#include "s3ce/contrastive.hpp"
#include "s3ce/error.hpp"
#include "s3ce/synth.hpp"
#include "support.hpp"

using namespace s3ce;
using s3ce::testing::random_matrix;

TEST_CASE("cosine similarity hand cases") {
  const Matrix s = cosine_sim_matrix(Matrix{{1, 0}, {0, 1}, {1, 1}, {2, 0}});
  CHECK(s(0, 1) == doctest::Approx(0.0));
  CHECK(s(0, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s(0, 2) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(s(0, 3) == doctest::Approx(1.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(s(i, i) == 1.0);
  CHECK(max_asymmetry(s) == 0.0);
}

TEST_CASE("cosine similarity rejects a zero row by index") {
  try {
    cosine_sim_matrix(Matrix{{1, 0}, {0, 0}});
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("cosine similarity entries stay in range") {
  Rng rng(3);
  const Matrix s = cosine_sim_matrix(random_matrix(rng, 16, 3));
  for (double v : s.values()) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("nt_xent_pair against high-precision value") {
  Matrix s(4, 4, 0.0);
  const double row[4] = {1.0, 0.8, 0.2, -0.4};
  for (std::size_t k = 0; k < 4; ++k) s(0, k) = row[k];
  CHECK(nt_xent_pair(s, 0, 1, 0.5) == doctest::Approx(0.3306784602098736).epsilon(1e-13));
}

TEST_CASE("nt_xent_pair uniform logits give ln(2N-1) for any temperature") {
  Matrix s(4, 4, 0.3);
  for (std::size_t i = 0; i < 4; ++i) s(i, i) = 1.0;
  for (double t : {0.05, 0.5, 1.0, 7.0}) CHECK(nt_xent_pair(s, 2, 3, t) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("nt_xent_pair saturates as T goes to zero") {
  Matrix s{{1, 0.9, 0.1}, {0.9, 1, 0.2}, {0.1, 0.2, 1}};
  double prev = nt_xent_pair(s, 0, 1, 1.0);
  for (double t : {0.5, 0.1, 0.05, 0.01}) {
    const double l = nt_xent_pair(s, 0, 1, t);
    CHECK(l > 0.0);
    CHECK(l < prev);
    prev = l;
  }
  CHECK(prev < 1e-30);
}

TEST_CASE("nt_xent_pair preconditions") {
  Matrix s(4, 4, 0.0);
  CHECK_THROWS_AS(nt_xent_pair(s, 0, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(nt_xent_pair(s, 0, 1, -1.0), ValidationError);
  CHECK_THROWS_AS(nt_xent_pair(s, 1, 1, 0.5), ValidationError);
  CHECK_THROWS_AS(nt_xent_pair(s, 0, 4, 0.5), ValidationError);
}

TEST_CASE("pretrain_loss is the mean of the pair losses") {
  Rng rng(8);
  const Matrix z = random_matrix(rng, 8, 5);
  const Matrix s = cosine_sim_matrix(z);
  double total = 0.0;
  for (std::size_t k = 0; k < 8; k += 2) total += nt_xent_pair(s, k, k + 1, 0.5) + nt_xent_pair(s, k + 1, k, 0.5);
  CHECK(pretrain_loss(z, 0.5) == doctest::Approx(total / 8.0).epsilon(1e-13));

  Tape tape;
  const Var loss = pretrain_loss(tape, tape.constant(z), 0.5);
  CHECK(tape.scalar(loss) == doctest::Approx(total / 8.0).epsilon(1e-12));
}

TEST_CASE("identical rows give ln(2N-1)") {
  for (std::size_t n : {2, 4, 8, 32}) {
    Matrix z(2 * n, 3);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t c = 0; c < 3; ++c) z(i, c) = (1.0 + static_cast<double>(i)) * (c + 1.0);
    CHECK(pretrain_loss(z, 0.5) == doctest::Approx(std::log(2.0 * n - 1.0)).epsilon(1e-9));
    Tape tape;
    CHECK(tape.scalar(pretrain_loss(tape, tape.constant(z), 0.5)) ==
          doctest::Approx(std::log(2.0 * n - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("pretrain_loss preconditions") {
  CHECK_THROWS_AS(pretrain_loss(Matrix{{1, 0}, {0, 1}}, 0.5), ValidationError);
  CHECK_THROWS_AS(pretrain_loss(Matrix{{1, 0}, {0, 1}, {1, 1}}, 0.5), ValidationError);
  CHECK_THROWS_AS(pretrain_loss(Matrix{{1, 0}, {0, 1}, {1, 1}, {1, 2}}, 0.0), ValidationError);
}

TEST_CASE("property: loss is invariant to positive row rescaling") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix z = random_matrix(rng, 6, 4);
    const double before = pretrain_loss(z, 0.5);
    const std::size_t row = uniform_index(rng, 6);
    const double factor = std::exp(uniform(rng, -3.0, 3.0));
    for (std::size_t c = 0; c < 4; ++c) z(row, c) *= factor;
    CHECK(pretrain_loss(z, 0.5) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("property: pair losses are positive") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix s = cosine_sim_matrix(random_matrix(rng, 6, 3));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j) CHECK(nt_xent_pair(s, i, j, 0.5) > 0.0);
  }
}

TEST_CASE("property: loss gradient matches finite differences") {
  Rng rng(77);
  for (std::size_t rows : {4, 6, 8}) {
    for (std::size_t dz : {2, 4, 6}) {
      const auto check = s3ce::testing::check_gradients(
          {{"z", random_matrix(rng, rows, dz)}},
          [](Tape& tape, const std::map<std::string, Var>& v) { return pretrain_loss(tape, v.at("z"), 0.5); });
      CAPTURE(rows);
      CAPTURE(dz);
      CHECK(check.worst_relative_error <= 1e-4);
    }
  }
}

namespace {

LabeledDataset small_images(std::size_t per_class) {
  SynthImageConfig cfg;
  cfg.classes = 4;
  cfg.per_class = per_class;
  cfg.size = 8;
  return synth_images(cfg, 9);
}

AugmentConfig small_augment() {
  AugmentConfig a;
  a.output_size = 8;
  return a;
}

}  // namespace

TEST_CASE("pretrain with zero epochs returns the initial parameters") {
  const LabeledDataset ds = small_images(4);
  PretrainConfig cfg;
  cfg.epochs = 0;
  cfg.seed = 4;
  const PretrainResult r = pretrain(ds, {16, 8}, {8, 4}, small_augment(), cfg);
  CHECK(r.loss_history.empty());
  CHECK(r.encoder == init_params(MlpConfig{{64, 16, 8}}, derive_seed(4, {10})));
  CHECK(r.projection == init_params(MlpConfig{{8, 8, 4}}, derive_seed(4, {11})));
}

TEST_CASE("pretrain is deterministic for a fixed seed") {
  const LabeledDataset ds = small_images(5);
  PretrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 8;
  cfg.seed = 17;
  const PretrainResult a = pretrain(ds, {16, 8}, {8, 4}, small_augment(), cfg);
  const PretrainResult b = pretrain(ds, {16, 8}, {8, 4}, small_augment(), cfg);
  CHECK(a.loss_history.size() == 3);
  CHECK(a.loss_history == b.loss_history);
  CHECK(a.encoder == b.encoder);
  cfg.seed = 18;
  CHECK(pretrain(ds, {16, 8}, {8, 4}, small_augment(), cfg).loss_history != a.loss_history);
}

TEST_CASE("pretrain drops a trailing batch smaller than two") {
  const LabeledDataset ds = small_images(4);  // 16 samples, batches of 5 -> 5,5,5,1
  PretrainConfig cfg;
  cfg.epochs = 1;
  cfg.batch_size = 5;
  const PretrainResult r = pretrain(ds, {16, 8}, {8, 4}, small_augment(), cfg);
  REQUIRE(r.loss_history.size() == 1);
  CHECK(std::isfinite(r.loss_history[0]));
}

TEST_CASE("pretrain smoke run lowers the loss") {
  const LabeledDataset ds = small_images(25);  // 100 images of 8x8
  PretrainConfig cfg;
  cfg.epochs = 50;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-3;
  cfg.seed = 2;
  const PretrainResult r = pretrain(ds, {32, 16}, {16, 8}, small_augment(), cfg);
  REQUIRE(r.loss_history.size() == 50);
  MESSAGE("first " << r.loss_history.front() << " last " << r.loss_history.back());
  CHECK(r.loss_history.back() < r.loss_history.front());
}

TEST_CASE("pretrain names a dead projection output") {
  const LabeledDataset ds = small_images(4);
  PretrainConfig cfg;
  cfg.epochs = 1;
  cfg.batch_size = 16;
  // A one-unit hidden layer in the head is inactive for about half the inputs.
  CHECK_THROWS_WITH_AS(
      [&] {
        const PretrainResult r = pretrain(ds, {1}, {1, 2}, small_augment(), cfg);
        return r.loss_history.size();
      }(),
      doctest::Contains("projection output is zero"), ValidationError);
}

TEST_CASE("pretrain config validation") {
  PretrainConfig cfg;
  cfg.temperature = -1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = PretrainConfig{};
  cfg.batch_size = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
