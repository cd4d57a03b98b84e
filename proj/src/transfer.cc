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

#include "gdp/transfer.h"

#include <string>

#include "trainer.h"

namespace gdp {
namespace {

TrainConfig target_config(const TransferPlan& plan, TrainConfig config) {
  if (plan.target_epochs) config.max_epochs = *plan.target_epochs;
  if (plan.target_lr) config.learning_rate = *plan.target_lr;
  return config;
}

void reinit(Mlp& net, std::uint64_t seed) {
  Rng rng = make_rng(seed, {internal::kInitStream, 1});
  net = Mlp::glorot(net.layer_dims(), rng);
}

}  // namespace

ConditionalGenerator pretrain_source(const Dataset& source, const TrainConfig& config) {
  return train(source, config, Role::kSource);
}

DiscreteGenerator pretrain_source(const CategoricalDataset& source, const TrainConfig& config) {
  return train_discrete(source, config, Role::kSource);
}

ConditionalGenerator finetune_target(const ConditionalGenerator& source, const TransferPlan& plan,
                                     const Dataset& target, const TrainConfig& config) {
  if (target.x.rows() == 0 || target.y.rows() == 0) {
    throw std::invalid_argument("finetune_target: target dataset is empty");
  }
  if (target.x.cols() != source.predictor_dim() || target.y.cols() != source.response_dim()) {
    throw TransferIncompatible(
        "target data has " + std::to_string(target.x.cols()) + " predictors and " +
        std::to_string(target.y.cols()) + " responses; source generator expects " +
        std::to_string(source.predictor_dim()) + " and " + std::to_string(source.response_dim()));
  }
  ConditionalGenerator start = source;
  start.info.role = Role::kFinetuned;
  if (!plan.warm_start_score_net) reinit(start.score_net, config.seed);
  FitOptions options;
  options.freeze_embedder = plan.freeze_embedder;
  options.keep_scalers = true;
  return fit(std::move(start), target, target_config(plan, config), options);
}

DiscreteGenerator finetune_target(const DiscreteGenerator& source, const TransferPlan& plan,
                                  const CategoricalDataset& target, const TrainConfig& config) {
  if (target.x.rows() == 0 || target.labels.empty()) {
    throw std::invalid_argument("finetune_target: target dataset is empty");
  }
  if (target.x.cols() != source.predictor_dim()) {
    throw TransferIncompatible("target data has " + std::to_string(target.x.cols()) +
                               " predictors; source generator expects " +
                               std::to_string(source.predictor_dim()));
  }
  for (int label : target.labels) {
    if (label < 0 || label >= source.num_categories()) {
      throw TransferIncompatible("target label " + std::to_string(label) +
                                 " outside the source's " +
                                 std::to_string(source.num_categories()) + " categories");
    }
  }
  DiscreteGenerator start = source;
  start.info.role = Role::kFinetuned;
  if (!plan.warm_start_score_net) reinit(start.denoise_net, config.seed);
  FitOptions options;
  options.freeze_embedder = plan.freeze_embedder;
  options.keep_scalers = true;
  return fit_discrete(std::move(start), target, target_config(plan, config), options);
}

}  // namespace gdp
