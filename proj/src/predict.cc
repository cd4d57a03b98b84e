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

#include "gdp/predict.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gdp {

LossSpec LossSpec::pinball(double alpha) {
  LossSpec s{LossKind::kPinball, alpha};
  s.validate();
  return s;
}

LossSpec LossSpec::zero_one() {
  return {LossKind::kZeroOne, 0.5, Dissimilarity::kEuclidean, MinimizerDomain::kSampleSet};
}

LossSpec LossSpec::medoid(Dissimilarity d) {
  return {LossKind::kMedoid, 0.5, d, MinimizerDomain::kSampleSet};
}

void LossSpec::validate() const {
  if (kind == LossKind::kPinball && !(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "pinball alpha must satisfy 0 < alpha < 1, got " << alpha;
    throw std::invalid_argument(msg.str());
  }
  if ((kind == LossKind::kZeroOne || kind == LossKind::kMedoid) &&
      domain != MinimizerDomain::kSampleSet) {
    throw std::invalid_argument("zero_one and medoid losses are minimized over the sample set");
  }
}

LossSpec LossSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  auto no_arg = [&](LossSpec spec) {
    if (colon != std::string_view::npos) {
      throw std::invalid_argument("loss '" + std::string(head) + "' takes no argument");
    }
    return spec;
  };
  if (head == "squared") return no_arg(squared());
  if (head == "absolute") return no_arg(absolute());
  if (head == "zero_one") return no_arg(zero_one());
  if (head == "pinball") {
    double alpha = 0.0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), alpha);
    if (arg.empty() || ec != std::errc() || end != arg.data() + arg.size()) {
      throw std::invalid_argument("pinball loss needs a numeric alpha, e.g. pinball:0.5");
    }
    return pinball(alpha);
  }
  if (head == "medoid") {
    if (arg.empty() || arg == "euclidean") return medoid(Dissimilarity::kEuclidean);
    if (arg == "cosine") return medoid(Dissimilarity::kCosine);
    throw std::invalid_argument("unknown medoid dissimilarity '" + std::string(arg) +
                                "' (expected euclidean or cosine)");
  }
  throw std::invalid_argument("unknown loss '" + std::string(text) +
                              "' (expected squared, absolute, pinball:<alpha>, zero_one, "
                              "medoid:<euclidean|cosine>)");
}

std::string LossSpec::to_string() const {
  switch (kind) {
    case LossKind::kSquared: return "squared";
    case LossKind::kAbsolute: return "absolute";
    case LossKind::kZeroOne: return "zero_one";
    case LossKind::kMedoid:
      return dissimilarity == Dissimilarity::kCosine ? "medoid:cosine" : "medoid:euclidean";
    case LossKind::kPinball: {
      std::ostringstream out;
      out << "pinball:" << alpha;
      return out.str();
    }
  }
  return "squared";
}

double pinball_loss(double residual, double alpha) {
  return residual * (alpha - (residual < 0.0 ? 1.0 : 0.0));
}

double dissimilarity(const Vector& a, const Vector& b, Dissimilarity kind) {
  if (a.size() != b.size()) throw std::invalid_argument("dissimilarity: vector sizes differ");
  if (kind == Dissimilarity::kEuclidean) return (a - b).norm();
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return (na == 0.0 && nb == 0.0) ? 0.0 : 1.0;
  return 1.0 - a.dot(b) / (na * nb);
}

namespace {

void check_samples(const SyntheticSampleSet& samples, const LossSpec& loss) {
  loss.validate();
  if (samples.size() == 0) throw std::invalid_argument("sample set is empty");
  const bool wants_labels = loss.kind == LossKind::kZeroOne;
  if (wants_labels && !samples.categorical()) {
    throw std::invalid_argument("zero_one loss needs a categorical sample set");
  }
  if (!wants_labels && samples.categorical()) {
    throw std::invalid_argument("loss '" + loss.to_string() + "' needs a continuous sample set");
  }
}

double point_loss(const LossSpec& loss, const Vector& theta, const Vector& y) {
  switch (loss.kind) {
    case LossKind::kSquared: return (theta - y).squaredNorm();
    case LossKind::kAbsolute: return (theta - y).cwiseAbs().sum();
    case LossKind::kPinball: {
      double total = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) total += pinball_loss(y[i] - theta[i], loss.alpha);
      return total;
    }
    case LossKind::kMedoid: return dissimilarity(theta, y, loss.dissimilarity);
    case LossKind::kZeroOne: break;
  }
  throw std::logic_error("point_loss: categorical loss on a vector payload");
}

// Order statistic k (1-based) of column j.
double order_statistic(const Matrix& values, Eigen::Index j, std::size_t k) {
  std::vector<double> col(values.col(j).data(), values.col(j).data() + values.rows());
  std::nth_element(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(k - 1), col.end());
  return col[k - 1];
}

std::size_t pinball_rank(double alpha, std::size_t m) {
  const double scaled = alpha * static_cast<double>(m);
  // Products such as 0.2 * 5 can land a hair above the integer.
  auto k = static_cast<std::size_t>(std::ceil(scaled - 1e-12 * static_cast<double>(m)));
  return std::clamp<std::size_t>(k, 1, m);
}

// Indices of the sample rows in lexicographic order (stable on ties).
std::vector<std::size_t> canonical_order(const Matrix& values) {
  std::vector<std::size_t> order(static_cast<std::size_t>(values.rows()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&values](std::size_t a, std::size_t b) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double va = values(static_cast<Eigen::Index>(a), j);
      const double vb = values(static_cast<Eigen::Index>(b), j);
      if (va != vb) return va < vb;
    }
    return false;
  });
  return order;
}

Prediction best_sample(const SyntheticSampleSet& samples, const LossSpec& loss) {
  const Matrix& values = samples.values();
  const std::vector<std::size_t> order = canonical_order(values);
  std::vector<Vector> rows;
  rows.reserve(order.size());
  for (std::size_t i : order) rows.push_back(values.row(static_cast<Eigen::Index>(i)).transpose());
  std::size_t best = 0;
  double best_total = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    double total = 0.0;
    for (std::size_t b = 0; b < rows.size(); ++b) total += point_loss(loss, rows[a], rows[b]);
    if (a == 0 || total < best_total) {
      best = a;
      best_total = total;
    }
  }
  Prediction out;
  out.value = rows[best];
  out.m_used = rows.size();
  out.sample_index = order[best];
  out.loss_value = best_total / static_cast<double>(rows.size());
  return out;
}

Prediction modal_label(const SyntheticSampleSet& samples) {
  const std::vector<int>& labels = samples.labels();
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  int mode = sorted.front();
  std::size_t mode_count = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > mode_count) {
      mode = sorted[i];
      mode_count = j - i;
    }
    i = j;
  }
  Prediction out;
  out.value = mode;
  out.m_used = labels.size();
  out.loss_value = 1.0 - static_cast<double>(mode_count) / static_cast<double>(labels.size());
  out.sample_index = static_cast<std::size_t>(
      std::find(labels.begin(), labels.end(), mode) - labels.begin());
  return out;
}

}  // namespace

double empirical_loss(const SyntheticSampleSet& samples, const LossSpec& loss,
                      const PredictionValue& value) {
  check_samples(samples, loss);
  const double m = static_cast<double>(samples.size());
  if (loss.kind == LossKind::kZeroOne) {
    const int label = std::get<int>(value);
    const auto& labels = samples.labels();
    return static_cast<double>(std::count_if(labels.begin(), labels.end(),
                                             [label](int l) { return l != label; })) / m;
  }
  const Vector& theta = std::get<Vector>(value);
  const Matrix& values = samples.values();
  if (theta.size() != values.cols()) throw std::invalid_argument("empirical_loss: dimension mismatch");
  double total = 0.0;
  for (Eigen::Index k = 0; k < values.rows(); ++k) {
    total += point_loss(loss, theta, values.row(k).transpose());
  }
  return total / m;
}

Prediction gdp_point(const SyntheticSampleSet& samples, const LossSpec& loss) {
  check_samples(samples, loss);
  if (loss.kind == LossKind::kZeroOne) return modal_label(samples);
  if (loss.domain == MinimizerDomain::kSampleSet) return best_sample(samples, loss);

  const Matrix& values = samples.values();
  const std::size_t m = samples.size();
  Vector theta(values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    switch (loss.kind) {
      case LossKind::kSquared:
        theta[j] = values.col(j).mean();
        break;
      case LossKind::kAbsolute:
        if (m % 2 == 1) {
          theta[j] = order_statistic(values, j, (m + 1) / 2);
        } else {
          theta[j] = 0.5 * (order_statistic(values, j, m / 2) + order_statistic(values, j, m / 2 + 1));
        }
        break;
      case LossKind::kPinball:
        theta[j] = order_statistic(values, j, pinball_rank(loss.alpha, m));
        break;
      default:
        throw std::logic_error("gdp_point: unexpected loss kind");
    }
  }
  Prediction out;
  out.loss_value = empirical_loss(samples, loss, theta);
  out.value = std::move(theta);
  out.m_used = m;
  return out;
}

std::vector<Prediction> gdp_quantiles(const SyntheticSampleSet& samples,
                                      std::span<const double> alphas) {
  std::vector<Prediction> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) out.push_back(gdp_point(samples, LossSpec::pinball(alpha)));
  return out;
}

}  // namespace gdp
