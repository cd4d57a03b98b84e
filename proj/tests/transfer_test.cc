/*
 * Copyright 2026 The GDP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "gdp/simbench.h"
#include "gdp/transfer.h"
#include "test_support.h"

namespace {

gdp::TrainConfig quick_config(std::uint64_t seed) {
  gdp::TrainConfig config = gdp::testing::toy_config(seed);
  config.width = 32;
  config.embed_dim = 8;
  config.max_epochs = 3;
  return config;
}

struct Fixture {
  gdp::TransferPair pair;
  gdp::ConditionalGenerator source;

  Fixture() {
    gdp::TransferPairConfig config;
    config.n_source = 2000;
    config.n_target = 200;
    pair = gdp::make_transfer_pair(31, config);
    source = gdp::pretrain_source(pair.source.as_dataset(), quick_config(1));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("pretraining records the source role") {
  CHECK(fixture().source.info.role == gdp::Role::kSource);
  CHECK(fixture().source.predictor_dim() == 5);
}

TEST_CASE("frozen embedder survives fine-tuning bit for bit") {
  const Fixture& f = fixture();
  const gdp::ConditionalGenerator tuned =
      gdp::finetune_target(f.source, {}, f.pair.target.as_dataset(), quick_config(2));
  CHECK(tuned.info.role == gdp::Role::kFinetuned);
  CHECK(tuned.embedder.params() == f.source.embedder.params());
  CHECK(tuned.score_net.params() != f.source.score_net.params());
  // The source scalers are kept for the shared embedder.
  CHECK(tuned.x_scaler.mean == f.source.x_scaler.mean);
  CHECK(tuned.y_scaler.scale == f.source.y_scaler.scale);
}

TEST_CASE("unfrozen embedder moves") {
  const Fixture& f = fixture();
  gdp::TransferPlan plan;
  plan.freeze_embedder = false;
  const gdp::ConditionalGenerator tuned =
      gdp::finetune_target(f.source, plan, f.pair.target.as_dataset(), quick_config(2));
  CHECK(tuned.embedder.params() != f.source.embedder.params());
}

TEST_CASE("zero target epochs return the source networks") {
  const Fixture& f = fixture();
  gdp::TransferPlan plan;
  plan.target_epochs = 0;
  const gdp::ConditionalGenerator tuned =
      gdp::finetune_target(f.source, plan, f.pair.target.as_dataset(), quick_config(2));
  CHECK(tuned.embedder.params() == f.source.embedder.params());
  CHECK(tuned.score_net.params() == f.source.score_net.params());
  gdp::SamplingOptions options;
  options.seed = 4;
  options.stride = 50;
  const std::vector<double> x(5, 0.3);
  CHECK(gdp::sample(tuned, x, 20, options).values() == gdp::sample(f.source, x, 20, options).values());
}

TEST_CASE("cold start re-initializes the score network") {
  const Fixture& f = fixture();
  gdp::TransferPlan plan;
  plan.warm_start_score_net = false;
  plan.target_epochs = 0;
  const gdp::ConditionalGenerator tuned =
      gdp::finetune_target(f.source, plan, f.pair.target.as_dataset(), quick_config(2));
  CHECK(tuned.score_net.params() != f.source.score_net.params());
  CHECK(tuned.embedder.params() == f.source.embedder.params());
}

TEST_CASE("incompatible or empty targets are rejected") {
  const Fixture& f = fixture();
  gdp::Dataset wrong = f.pair.target.as_dataset();
  wrong.x = wrong.x.leftCols(4).eval();
  CHECK_THROWS_AS(gdp::finetune_target(f.source, {}, wrong, quick_config(2)),
                  gdp::TransferIncompatible);
  gdp::Dataset two_responses = f.pair.target.as_dataset();
  two_responses.y = gdp::Matrix::Random(two_responses.y.rows(), 2);
  CHECK_THROWS_AS(gdp::finetune_target(f.source, {}, two_responses, quick_config(2)),
                  gdp::TransferIncompatible);
  gdp::Dataset empty;
  empty.x.resize(0, 5);
  empty.y.resize(0, 1);
  CHECK_THROWS_AS(gdp::finetune_target(f.source, {}, empty, quick_config(2)), std::invalid_argument);
}

TEST_CASE("discrete transfer checks the categories") {
  gdp::Rng rng(3);
  const gdp::CategoricalDataset data = gdp::make_categorical_toy(500, rng);
  const gdp::DiscreteGenerator source = gdp::pretrain_source(data, quick_config(5));
  CHECK(source.info.role == gdp::Role::kSource);
  gdp::CategoricalDataset bad = data;
  bad.labels[0] = 7;
  CHECK_THROWS_AS(gdp::finetune_target(source, {}, bad, quick_config(6)), gdp::TransferIncompatible);
  const gdp::DiscreteGenerator tuned = gdp::finetune_target(source, {}, data, quick_config(6));
  CHECK(tuned.embedder.params() == source.embedder.params());
  CHECK(tuned.info.role == gdp::Role::kFinetuned);
}
