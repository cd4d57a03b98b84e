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

// Conditional discrete diffusion over K categories with the uniform
// transition kernel: at step t a label is kept with probability 1 - beta_t
// and otherwise resampled uniformly over all K labels.

#ifndef GDP_DISCRETE_DIFFUSION_H_
#define GDP_DISCRETE_DIFFUSION_H_

#include <span>
#include <vector>

#include "gdp/diffusion.h"
#include "gdp/generator.h"
#include "gdp/nn.h"
#include "gdp/rng.h"

namespace gdp {

class DiscreteSchedule {
 public:
  DiscreteSchedule() = default;

  static DiscreteSchedule linear(int num_categories, int steps = 1000, double beta_min = 1e-4,
                                 double beta_max = 0.02);

  int steps() const { return betas_.steps(); }
  int num_categories() const { return num_categories_; }
  double beta_min() const { return betas_.beta_min(); }
  double beta_max() const { return betas_.beta_max(); }
  double beta(int t) const { return betas_.beta(t); }
  // prod_{s <= t} (1 - beta_s); 1 at t = 0.
  double alpha_bar(int t) const { return betas_.alpha_bar(t); }

  // P(x_t = x_0 | x_0) = alpha_bar_t + (1 - alpha_bar_t) / K.
  double keep_probability(int t) const;
  // One-step kernel Q_t, rows indexed by x_{t-1}.
  Matrix transition_matrix(int t) const;
  // q(x_t | x_0 = label) as a probability vector.
  Vector marginal(int label, int t) const;

 private:
  NoiseSchedule betas_;
  int num_categories_ = 0;
};

// Samples x_t ~ q(x_t | x_0 = label) in closed form.
int forward_corrupt(int label, int t, const DiscreteSchedule& schedule, Rng& rng);

// Samples x_t ~ q(x_t | x_{t-1} = label), a single transition.
int corrupt_one_step(int label, int t, const DiscreteSchedule& schedule, Rng& rng);

struct DiscreteGenerator {
  Mlp denoise_net;  // [one-hot x_t (K); h; time embedding] -> K logits for x_0
  Mlp embedder;
  DiscreteSchedule schedule;
  int time_dim = 16;
  Standardizer x_scaler;
  TrainingInfo info;

  int predictor_dim() const { return embedder.input_dim(); }
  int num_categories() const { return denoise_net.output_dim(); }
  int embed_dim() const { return embedder.output_dim(); }

  void validate() const;

  // Predicted distribution of the clean label given the raw predictor row,
  // the noisy label and the step.
  Vector clean_distribution(std::span<const double> x, int noisy_label, int t) const;
};

// Infers K as (max label + 1); every label in [0, K) must occur.
DiscreteGenerator train_discrete(const CategoricalDataset& data, const TrainConfig& config,
                                 Role role = Role::kStandalone);

DiscreteGenerator fit_discrete(DiscreteGenerator start, const CategoricalDataset& data,
                               const TrainConfig& config, const FitOptions& options);

// Ancestral reverse sampling from x_T ~ Uniform{0..K-1}. At each step the
// network's clean-label distribution is pushed through the forward posterior
//   p(x_{t-1} = j | x_t) = sum_k q(x_{t-1} = j | x_t, x_0 = k) p(x_0 = k | x_t).
SyntheticSampleSet sample_discrete(const DiscreteGenerator& gen, std::span<const double> x_new,
                                   int m, const SamplingOptions& options);

// Softmax of each column.
Matrix softmax_columns(const Matrix& logits);

}  // namespace gdp

#endif  // GDP_DISCRETE_DIFFUSION_H_
