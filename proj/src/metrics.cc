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

#include "gdp/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gdp {
namespace {

template <class T>
void check_pair(std::span<const T> pred, std::span<const T> truth, const char* what) {
  if (pred.empty() || truth.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
  if (pred.size() != truth.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(pred.size()) + " vs " + std::to_string(truth.size()) + ")");
  }
}

}  // namespace

double rmse(std::span<const double> pred, std::span<const double> truth) {
  check_pair(pred, truth, "rmse");
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) total += (pred[i] - truth[i]) * (pred[i] - truth[i]);
  return std::sqrt(total / static_cast<double>(pred.size()));
}

double mad(std::span<const double> pred, std::span<const double> truth) {
  check_pair(pred, truth, "mad");
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) total += std::abs(pred[i] - truth[i]);
  return total / static_cast<double>(pred.size());
}

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  check_pair(pred, truth, "accuracy");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double cohen_kappa(std::span<const int> pred, std::span<const int> truth) {
  check_pair(pred, truth, "kappa");
  std::map<int, double> pred_freq;
  std::map<int, double> truth_freq;
  double agree = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pred_freq[pred[i]] += 1.0;
    truth_freq[truth[i]] += 1.0;
    if (pred[i] == truth[i]) agree += 1.0;
  }
  const double n = static_cast<double>(pred.size());
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, count] : pred_freq) {
    auto it = truth_freq.find(label);
    if (it != truth_freq.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double wasserstein1_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein1_1d: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa.size() == sb.size()) {
    double total = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) total += std::abs(sa[i] - sb[i]);
    return total / static_cast<double>(sa.size());
  }
  // Integrate |F_a - F_b| over the merged breakpoints.
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0;
  std::size_t ib = 0;
  double total = 0.0;
  double x = std::min(sa.front(), sb.front());
  while (ia < sa.size() || ib < sb.size()) {
    double next;
    if (ib >= sb.size() || (ia < sa.size() && sa[ia] <= sb[ib])) {
      next = sa[ia];
    } else {
      next = sb[ib];
    }
    total += std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb) * (next - x);
    x = next;
    while (ia < sa.size() && sa[ia] == x) ++ia;
    while (ib < sb.size() && sb[ib] == x) ++ib;
  }
  return total;
}

double MetricReport::average() const {
  if (by_alpha.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [alpha, value] : by_alpha) total += value;
  return total / static_cast<double>(by_alpha.size());
}

}  // namespace gdp
