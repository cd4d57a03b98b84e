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

// Pieces shared by the Gaussian and the discrete conditional generators:
// training configuration, metadata, predictor standardization and the
// synthetic sample set handed to the GDP minimizer.

#ifndef GDP_GENERATOR_H_
#define GDP_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gdp/nn.h"

namespace gdp {

// Rows are observations.
struct Dataset {
  Matrix x;  // n x p
  Matrix y;  // n x d_y
};

struct CategoricalDataset {
  Matrix x;                 // n x p
  std::vector<int> labels;  // n, 0-based contiguous categories
};

struct TrainConfig {
  int batch_size = 512;
  double learning_rate = 1e-4;
  int max_epochs = 200;
  int patience = 20;
  int width = 128;
  int depth = 3;  // linear layers per network
  int embed_dim = 64;
  int time_dim = 16;
  int timesteps = 1000;
  double beta_min = 1e-4;
  double beta_max = 0.02;
  double val_fraction = 0.1;
  // Exponential moving average of the weights; validation and the returned
  // networks use the averaged weights. 0 disables averaging.
  double ema_decay = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Role { kStandalone, kSource, kFinetuned };

std::string to_string(Role role);
Role role_from_string(const std::string& text);

struct TrainingInfo {
  Role role = Role::kStandalone;
  std::uint64_t seed = 0;
  int epochs_run = 0;
  double final_val_loss = 0.0;
  std::size_t n_train = 0;
  std::vector<double> train_loss_history;
  std::vector<double> val_loss_history;
};

// Per-column affine map to zero mean and unit scale.
struct Standardizer {
  Vector mean;
  Vector scale;

  // Columns with zero spread keep scale 1 unless `reject_constant` is set,
  // in which case they raise std::invalid_argument naming the column.
  static Standardizer fit(const Matrix& rows, bool reject_constant, const char* what);

  Matrix apply(const Matrix& rows) const;
  Vector apply(std::span<const double> row) const;
  Matrix invert(const Matrix& rows) const;
  Eigen::Index dim() const { return mean.size(); }
};

// The m conditional draws at one query point. Continuous payloads hold one
// sample per row (m x d_y) on the original response scale; categorical
// payloads hold labels.
struct SyntheticSampleSet {
  Vector condition;
  std::variant<Matrix, std::vector<int>> payload;

  bool categorical() const { return std::holds_alternative<std::vector<int>>(payload); }
  std::size_t size() const;
  const Matrix& values() const { return std::get<Matrix>(payload); }
  const std::vector<int>& labels() const { return std::get<std::vector<int>>(payload); }
};

struct SamplingOptions {
  int stride = 1;
  std::uint64_t seed = 0;
  // Distinguishes independent calls that share a seed, e.g. the index of the
  // query point in a batch of conditions.
  std::uint64_t stream = 0;
};

// Thrown when a checkpoint cannot be fine-tuned on the given target data.
class TransferIncompatible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gdp

#endif  // GDP_GENERATOR_H_
