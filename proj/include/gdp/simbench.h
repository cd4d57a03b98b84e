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

// Heteroscedastic simulation benchmark:
//
//   Y = sin(X^T beta) + log(1 + |X_1|) + eps * (1 + |X_2|),  eps ~ N(0, |X_2|)
//
// with beta ~ Uniform(-1, 1)^p and X ~ N(0, I) (case I) or N(0, Sigma),
// Sigma_ij = rho^|i-j| (case II). Also hosts the small toy problems used to
// check the generators against known conditionals.

#ifndef GDP_SIMBENCH_H_
#define GDP_SIMBENCH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gdp/generator.h"
#include "gdp/metrics.h"
#include "gdp/nn.h"
#include "gdp/rng.h"

namespace gdp {

enum class SimCase { kI, kII };

std::string to_string(SimCase c);
SimCase sim_case_from_string(const std::string& text);

struct SimConfig {
  std::size_t n = 10000;
  int p = 100;
  SimCase sim_case = SimCase::kI;
  double rho = -0.5;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  int m = 1000;
  std::vector<double> alphas{0.05, 0.2, 0.5, 0.8, 0.95};
  std::size_t test_subset = 200;  // 0 evaluates every test row
  int stride = 10;
  unsigned threads = 0;  // 0 = hardware concurrency

  // All test rows and stride 1.
  void set_full_fidelity();
  void validate() const;
};

struct SimDataset {
  Matrix x;  // n x p
  Vector y;
  Vector beta;
  SimCase sim_case = SimCase::kI;
  double rho = 0.0;

  Dataset as_dataset() const;
};

// Draws beta once, then n rows.
SimDataset simulate(const SimConfig& config, Rng& rng);

// Rows from the same conditional law with a given beta; `x_shift` is added to
// every predictor coordinate.
SimDataset simulate_with_beta(const Vector& beta, std::size_t n, SimCase sim_case, double rho,
                              double x_shift, Rng& rng);

// Lower-triangular factor of Sigma_ij = rho^|i-j| (identity for case I).
Matrix predictor_cholesky(int p, SimCase sim_case, double rho);

// sin(x^T beta) + log(1 + |x_1|) and (1 + |x_2|) sqrt|x_2|.
double conditional_location(std::span<const double> x, const Vector& beta);
double conditional_scale(std::span<const double> x);

// One draw of Y | x.
double draw_response(std::span<const double> x, const Vector& beta, Rng& rng);

// Closed-form conditional quantiles, one row per x row, one column per alpha.
Matrix oracle_quantiles(const Matrix& x, const Vector& beta, std::span<const double> alphas);

// Monte-Carlo quantiles from `draws` samples of Y | x per row.
Matrix oracle_quantiles_mc(const Matrix& x, const Vector& beta, std::span<const double> alphas,
                           int draws, Rng& rng);

double standard_normal_quantile(double alpha);

struct BenchmarkResult {
  MetricReport rmse;
  MetricReport mad;
  TrainingInfo training;
  std::size_t n_train = 0;
  std::size_t n_test_evaluated = 0;
  double train_seconds = 0.0;
  double sample_seconds = 0.0;
};

// Simulate, split 7:3, train a Gaussian generator on the training split,
// draw m samples per evaluated test row, predict every alpha by pinball
// minimization and score against the closed-form oracle quantiles.
BenchmarkResult run_benchmark(const SimConfig& sim, const TrainConfig& train);

// CSV with one row per metric: metric,<alpha columns>,Average.
std::string report_csv(const BenchmarkResult& result);
// Fixed-width table for terminals.
std::string report_table(const BenchmarkResult& result, const std::string& title);

struct TransferPairConfig {
  std::size_t n_source = 20000;
  std::size_t n_target = 500;
  int p = 5;
  double x_shift = 0.5;
};

struct TransferPair {
  SimDataset source;
  SimDataset target;
};

// Source and target share beta and the conditional law of Y given X; the
// target predictors are shifted by +x_shift on every coordinate.
TransferPair make_transfer_pair(std::uint64_t seed, const TransferPairConfig& config = {});

// y | x ~ N(2x, 1) with x ~ N(0, 1).
Dataset make_linear_gaussian_toy(std::size_t n, Rng& rng);

// Binary x in {0, 1}; label probabilities (0.2, 0.3, 0.5) at x = 0 and
// (0.5, 0.3, 0.2) at x = 1.
CategoricalDataset make_categorical_toy(std::size_t n, Rng& rng);
Vector categorical_toy_probabilities(double x);

}  // namespace gdp

#endif  // GDP_SIMBENCH_H_
