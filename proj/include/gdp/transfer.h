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

// Transfer between tasks that share the condition embedding h. The source
// generator is trained on plentiful source data; the target generator starts
// from it and fine-tunes only the task-specific parameters on scarce target
// data. Encoder and decoder are identity maps for tabular responses.

#ifndef GDP_TRANSFER_H_
#define GDP_TRANSFER_H_

#include <optional>

#include "gdp/diffusion.h"
#include "gdp/discrete_diffusion.h"
#include "gdp/generator.h"

namespace gdp {

struct TransferPlan {
  bool freeze_embedder = true;
  // When false the score network is re-initialized before fine-tuning.
  bool warm_start_score_net = true;
  std::optional<int> target_epochs;
  std::optional<double> target_lr;
};

// Trains with role "source".
ConditionalGenerator pretrain_source(const Dataset& source, const TrainConfig& config);
DiscreteGenerator pretrain_source(const CategoricalDataset& source, const TrainConfig& config);

// Throws TransferIncompatible when the target data does not match the source
// generator's predictor/response dimensions (or categories), and
// std::invalid_argument when the target set is empty. The source
// standardizers are kept so the shared embedder sees inputs on its own scale.
ConditionalGenerator finetune_target(const ConditionalGenerator& source, const TransferPlan& plan,
                                     const Dataset& target, const TrainConfig& config);
DiscreteGenerator finetune_target(const DiscreteGenerator& source, const TransferPlan& plan,
                                  const CategoricalDataset& target, const TrainConfig& config);

}  // namespace gdp

#endif  // GDP_TRANSFER_H_
