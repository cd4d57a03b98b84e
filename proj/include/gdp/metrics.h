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

#ifndef GDP_METRICS_H_
#define GDP_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gdp {

double rmse(std::span<const double> pred, std::span<const double> truth);
double mad(std::span<const double> pred, std::span<const double> truth);

double accuracy(std::span<const int> pred, std::span<const int> truth);

// Unweighted Cohen's kappa, (p_o - p_e) / (1 - p_e). Returns 0 when p_e == 1.
double cohen_kappa(std::span<const int> pred, std::span<const int> truth);

// Exact 1-D Wasserstein-1 distance between two empirical distributions,
// i.e. the integral of |F_a - F_b|.
double wasserstein1_1d(std::span<const double> a, std::span<const double> b);

// Per-quantile values of one metric plus their average.
struct MetricReport {
  std::string metric;
  std::size_t sample_count = 0;
  std::map<double, double> by_alpha;

  double average() const;
};

}  // namespace gdp

#endif  // GDP_METRICS_H_
