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

// Conditional Gaussian diffusion over continuous responses.
//
// Forward process (variance preserving):
//   y_t = mu_t * y_0 + sigma_t * eps,  mu_t = sqrt(abar_t), sigma_t = sqrt(1 - abar_t)
// The network predicts eps from (y_t, h(x), t); the score is -eps_hat / sigma_t.
// The network is never evaluated at t = 0.

#ifndef GDP_DIFFUSION_H_
#define GDP_DIFFUSION_H_

#include <optional>
#include <span>
#include <vector>

#include "gdp/generator.h"
#include "gdp/nn.h"
#include "gdp/rng.h"

namespace gdp {

class NoiseSchedule {
 public:
  NoiseSchedule() = default;

  // beta_t linear from beta_min (t = 1) to beta_max (t = steps).
  static NoiseSchedule linear(int steps = 1000, double beta_min = 1e-4, double beta_max = 0.02);

  int steps() const { return steps_; }
  double beta_min() const { return beta_min_; }
  double beta_max() const { return beta_max_; }

  // Valid for 1 <= t <= steps.
  double beta(int t) const;
  double alpha(int t) const { return 1.0 - beta(t); }
  // Valid for 0 <= t <= steps; alpha_bar(0) == 1.
  double alpha_bar(int t) const;
  double mu(int t) const;
  double sigma(int t) const;

 private:
  void check_step(int t, int lo) const;

  int steps_ = 0;
  double beta_min_ = 0.0;
  double beta_max_ = 0.0;
  std::vector<double> beta_;       // index t - 1
  std::vector<double> alpha_bar_;  // index t
};

struct ConditionalGenerator {
  Mlp score_net;  // [y_t (d_y); h (embed_dim); time embedding] -> eps_hat
  Mlp embedder;   // standardized x (p) -> h (embed_dim)
  NoiseSchedule schedule;
  int time_dim = 16;
  Standardizer x_scaler;
  Standardizer y_scaler;
  TrainingInfo info;

  int predictor_dim() const { return embedder.input_dim(); }
  int response_dim() const { return score_net.output_dim(); }
  int embed_dim() const { return embedder.output_dim(); }

  // Throws std::invalid_argument when the parts do not chain together.
  void validate() const;

  // Noise prediction for standardized noisy responses `y_t` (d_y x B),
  // embeddings `h` (embed_dim x B) and per-column steps.
  Matrix predict_noise(const Matrix& y_t, const Matrix& h, std::span<const int> steps) const;
};

struct NoisedResponse {
  Vector y_t;
  Vector noise;
};

// Draws eps ~ N(0, I) and returns (mu_t y0 + sigma_t eps, eps).
NoisedResponse forward_noise(const Vector& y0, int t, const NoiseSchedule& schedule, Rng& rng);

// Same map with caller-supplied noise.
Vector forward_noise(const Vector& y0, int t, const Vector& noise, const NoiseSchedule& schedule);

// Mean over the batch of ||eps - eps_hat(y_t, h(x), t)||^2 with t uniform on
// {1..T} per row. `x_std` and `y_std` are standardized, one observation per row.
double score_matching_loss(const ConditionalGenerator& gen, const Matrix& x_std,
                           const Matrix& y_std, Rng& rng);

// Trains a fresh generator with early stopping on a held-out tail of the
// shuffled rows. Throws on empty data or a constant response column.
ConditionalGenerator train(const Dataset& data, const TrainConfig& config,
                           Role role = Role::kStandalone);

struct FitOptions {
  bool freeze_embedder = false;
  bool freeze_score_net = false;
  // Keep the standardizers already stored in the starting generator.
  bool keep_scalers = false;
};

// Continues training from `start` (used by transfer fine-tuning).
ConditionalGenerator fit(ConditionalGenerator start, const Dataset& data,
                         const TrainConfig& config, const FitOptions& options);

// Ancestral reverse sampling from y_T ~ N(0, I). With stride s the visited
// steps are T, T - s, ..., s, each step using the effective
// alpha = abar_t / abar_{t-s}. Chain j draws from its own engine seeded by
// (options.seed, options.stream, j), so chains are independent of m.
SyntheticSampleSet sample(const ConditionalGenerator& gen, std::span<const double> x_new, int m,
                          const SamplingOptions& options);

}  // namespace gdp

#endif  // GDP_DIFFUSION_H_
