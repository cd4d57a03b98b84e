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

// Point prediction from a synthetic sample set: the minimizer of the
// empirical loss  theta_hat = argmin_theta (1/m) sum_k loss(theta, y_k).

#ifndef GDP_PREDICT_H_
#define GDP_PREDICT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gdp/generator.h"
#include "gdp/nn.h"

namespace gdp {

enum class LossKind { kSquared, kAbsolute, kPinball, kZeroOne, kMedoid };
enum class Dissimilarity { kEuclidean, kCosine };
enum class MinimizerDomain { kContinuous, kSampleSet };

struct LossSpec {
  LossKind kind = LossKind::kSquared;
  double alpha = 0.5;  // pinball only
  Dissimilarity dissimilarity = Dissimilarity::kEuclidean;  // medoid only
  MinimizerDomain domain = MinimizerDomain::kContinuous;

  static LossSpec squared() { return {LossKind::kSquared}; }
  static LossSpec absolute() { return {LossKind::kAbsolute}; }
  static LossSpec pinball(double alpha);
  static LossSpec zero_one();
  static LossSpec medoid(Dissimilarity d = Dissimilarity::kEuclidean);

  // Accepts "squared", "absolute", "pinball:<alpha>", "zero_one",
  // "medoid:<euclidean|cosine>". Throws std::invalid_argument.
  static LossSpec parse(std::string_view text);
  std::string to_string() const;

  // Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

// rho_alpha(u) = u * (alpha - 1{u < 0}).
double pinball_loss(double residual, double alpha);

double dissimilarity(const Vector& a, const Vector& b, Dissimilarity kind);

using PredictionValue = std::variant<Vector, int>;

struct Prediction {
  PredictionValue value;
  double loss_value = 0.0;
  std::size_t m_used = 0;
  // Set when the minimizer was chosen from the sample set.
  std::optional<std::size_t> sample_index;
};

// (1/m) sum_k loss(value, y_k).
double empirical_loss(const SyntheticSampleSet& samples, const LossSpec& loss,
                      const PredictionValue& value);

// squared -> per-coordinate mean; absolute -> per-coordinate median (mean
// of the two central order statistics for even m); pinball(alpha) -> order
// statistic ceil(alpha * m) (1-based) per coordinate; zero_one -> mode, ties
// toward the smallest label; medoid -> the sample with the smallest average
// dissimilarity after a lexicographic sort, ties toward the first.
Prediction gdp_point(const SyntheticSampleSet& samples, const LossSpec& loss);

// One pinball prediction per alpha, all from the same sample set.
std::vector<Prediction> gdp_quantiles(const SyntheticSampleSet& samples,
                                      std::span<const double> alphas);

}  // namespace gdp

#endif  // GDP_PREDICT_H_
