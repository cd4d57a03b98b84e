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

#include "gdp/discrete_diffusion.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "conditioned_net.h"
#include "trainer.h"

namespace gdp {

DiscreteSchedule DiscreteSchedule::linear(int num_categories, int steps, double beta_min,
                                          double beta_max) {
  if (num_categories < 1) throw std::invalid_argument("DiscreteSchedule: need at least one category");
  DiscreteSchedule s;
  s.betas_ = NoiseSchedule::linear(steps, beta_min, beta_max);
  s.num_categories_ = num_categories;
  return s;
}

double DiscreteSchedule::keep_probability(int t) const {
  const double abar = alpha_bar(t);
  return abar + (1.0 - abar) / num_categories_;
}

Matrix DiscreteSchedule::transition_matrix(int t) const {
  const double b = beta(t);
  Matrix q = Matrix::Constant(num_categories_, num_categories_, b / num_categories_);
  q.diagonal().array() += 1.0 - b;
  return q;
}

Vector DiscreteSchedule::marginal(int label, int t) const {
  if (label < 0 || label >= num_categories_) throw std::out_of_range("marginal: label out of range");
  const double abar = alpha_bar(t);
  Vector q = Vector::Constant(num_categories_, (1.0 - abar) / num_categories_);
  q[label] += abar;
  return q;
}

namespace {

void check_label(int label, const DiscreteSchedule& schedule) {
  if (label < 0 || label >= schedule.num_categories()) {
    throw std::invalid_argument("label " + std::to_string(label) + " outside [0, " +
                            std::to_string(schedule.num_categories()) + ")");
  }
}

void check_step(int t, const DiscreteSchedule& schedule) {
  if (t < 1 || t > schedule.steps()) {
    throw std::out_of_range("step " + std::to_string(t) + " outside [1, " +
                            std::to_string(schedule.steps()) + "]");
  }
}

}  // namespace

int forward_corrupt(int label, int t, const DiscreteSchedule& schedule, Rng& rng) {
  check_label(label, schedule);
  check_step(t, schedule);
  const int k = schedule.num_categories();
  if (k == 1) return label;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < schedule.keep_probability(t)) return label;
  std::uniform_int_distribution<int> other(0, k - 2);
  const int pick = other(rng);
  return pick >= label ? pick + 1 : pick;
}

int corrupt_one_step(int label, int t, const DiscreteSchedule& schedule, Rng& rng) {
  check_label(label, schedule);
  check_step(t, schedule);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) >= schedule.beta(t)) return label;
  std::uniform_int_distribution<int> any(0, schedule.num_categories() - 1);
  return any(rng);
}

Matrix softmax_columns(const Matrix& logits) {
  Matrix p = logits;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    p.col(j).array() -= p.col(j).maxCoeff();
    p.col(j) = p.col(j).array().exp();
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

void DiscreteGenerator::validate() const {
  if (embedder.num_layers() == 0 || denoise_net.num_layers() == 0) {
    throw std::invalid_argument("generator networks are empty");
  }
  if (denoise_net.input_dim() != num_categories() + embed_dim() + time_dim) {
    throw std::invalid_argument("denoising network input must be K + embed_dim + time_dim");
  }
  if (schedule.num_categories() != num_categories()) {
    throw std::invalid_argument("schedule and network disagree on the number of categories");
  }
  if (x_scaler.dim() != predictor_dim() || (x_scaler.scale.array() <= 0.0).any()) {
    throw std::invalid_argument("predictor standardizer does not match the embedder");
  }
}

Vector DiscreteGenerator::clean_distribution(std::span<const double> x, int noisy_label,
                                             int t) const {
  check_label(noisy_label, schedule);
  check_step(t, schedule);
  const Vector xs = x_scaler.apply(x);
  const Vector h = embedder.forward(std::span<const double>(xs.data(), xs.size()));
  Vector in = Vector::Zero(denoise_net.input_dim());
  in[noisy_label] = 1.0;
  in.segment(num_categories(), embed_dim()) = h;
  in.tail(time_dim) = time_embed(t, schedule.steps(), time_dim);
  return softmax_columns(denoise_net.forward(std::span<const double>(in.data(), in.size())));
}

namespace {

// Clean payload: labels stored as a 1 x n row. Target: one-hot clean label.
class CategoricalTask {
 public:
  CategoricalTask(const DiscreteSchedule& schedule) : schedule_(schedule) {}

  int payload_dim() const { return schedule_.num_categories(); }

  void corrupt(const Matrix& clean, std::span<const int> steps, Rng& rng, Matrix& payload,
               Matrix& target) const {
    const int k = schedule_.num_categories();
    payload = Matrix::Zero(k, clean.cols());
    target = Matrix::Zero(k, clean.cols());
    for (Eigen::Index j = 0; j < clean.cols(); ++j) {
      const int label = static_cast<int>(clean(0, j));
      target(label, j) = 1.0;
      payload(forward_corrupt(label, steps[static_cast<std::size_t>(j)], schedule_, rng), j) = 1.0;
    }
  }

  double loss(const Matrix& logits, const Matrix& target, Matrix* grad) const {
    const double batch = static_cast<double>(logits.cols());
    double total = 0.0;
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
      const double mx = logits.col(j).maxCoeff();
      const double lse = mx + std::log((logits.col(j).array() - mx).exp().sum());
      total += lse - logits.col(j).dot(target.col(j));
    }
    if (grad != nullptr) *grad = (softmax_columns(logits) - target) / batch;
    return total / batch;
  }

 private:
  const DiscreteSchedule& schedule_;
};

int infer_categories(const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("dataset is empty");
  const int max_label = *std::max_element(labels.begin(), labels.end());
  const int min_label = *std::min_element(labels.begin(), labels.end());
  if (min_label < 0) {
    throw std::invalid_argument("labels must be non-negative, found " + std::to_string(min_label));
  }
  std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
  for (int l : labels) seen[static_cast<std::size_t>(l)] = true;
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw std::invalid_argument("labels must be contiguous from 0; label " + std::to_string(k) +
                                  " never occurs");
    }
  }
  return max_label + 1;
}

Matrix rows_to_columns(const Matrix& rows, std::span<const std::size_t> idx) {
  Matrix out(rows.cols(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = rows.row(static_cast<Eigen::Index>(idx[j])).transpose();
  }
  return out;
}

Matrix labels_to_row(const std::vector<int>& labels, std::span<const std::size_t> idx) {
  Matrix out(1, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out(0, static_cast<Eigen::Index>(j)) = labels[idx[j]];
  return out;
}

std::vector<int> hidden_dims(int in, int width, int depth, int out) {
  std::vector<int> dims{in};
  for (int l = 1; l < depth; ++l) dims.push_back(width);
  dims.push_back(out);
  return dims;
}

void check_dataset(const CategoricalDataset& data) {
  if (data.x.rows() == 0) throw std::invalid_argument("dataset is empty");
  if (static_cast<std::size_t>(data.x.rows()) != data.labels.size()) {
    throw std::invalid_argument("dataset x and labels have different row counts");
  }
  if (!data.x.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
}

}  // namespace

DiscreteGenerator fit_discrete(DiscreteGenerator gen, const CategoricalDataset& data,
                               const TrainConfig& config, const FitOptions& options) {
  config.validate();
  check_dataset(data);
  gen.validate();
  if (data.x.cols() != gen.predictor_dim()) {
    throw std::invalid_argument("dataset predictor count does not match the generator");
  }
  for (int l : data.labels) {
    if (l < 0 || l >= gen.num_categories()) {
      throw std::invalid_argument("label " + std::to_string(l) + " outside [0, " +
                                  std::to_string(gen.num_categories()) + ")");
    }
  }
  const internal::SplitIndices split =
      internal::split_rows(data.labels.size(), config.val_fraction, config.seed);
  if (!options.keep_scalers) {
    Matrix x_tr(static_cast<Eigen::Index>(split.train.size()), data.x.cols());
    for (std::size_t i = 0; i < split.train.size(); ++i) {
      x_tr.row(static_cast<Eigen::Index>(i)) = data.x.row(static_cast<Eigen::Index>(split.train[i]));
    }
    gen.x_scaler = Standardizer::fit(x_tr, false, "predictor");
  }
  const Matrix x_std = gen.x_scaler.apply(data.x);
  const CategoricalTask task(gen.schedule);
  internal::NetsToTrain nets{gen.denoise_net, gen.embedder, gen.time_dim, gen.schedule.steps(),
                             options.freeze_score_net, options.freeze_embedder};
  const Role role = gen.info.role;
  gen.info = internal::run_training(nets, rows_to_columns(x_std, split.train),
                                    labels_to_row(data.labels, split.train),
                                    rows_to_columns(x_std, split.validation),
                                    labels_to_row(data.labels, split.validation), task, config);
  gen.info.role = role;
  return gen;
}

DiscreteGenerator train_discrete(const CategoricalDataset& data, const TrainConfig& config,
                                 Role role) {
  config.validate();
  check_dataset(data);
  const int k = infer_categories(data.labels);
  const int p = static_cast<int>(data.x.cols());
  Rng init = make_rng(config.seed, {internal::kInitStream});
  DiscreteGenerator gen;
  gen.embedder = Mlp::glorot(hidden_dims(p, config.width, config.depth, config.embed_dim), init);
  gen.denoise_net = Mlp::glorot(
      hidden_dims(k + config.embed_dim + config.time_dim, config.width, config.depth, k), init);
  gen.schedule = DiscreteSchedule::linear(k, config.timesteps, config.beta_min, config.beta_max);
  gen.time_dim = config.time_dim;
  gen.x_scaler = {Vector::Zero(p), Vector::Ones(p)};
  gen.info.role = role;
  return fit_discrete(std::move(gen), data, config, FitOptions{});
}

SyntheticSampleSet sample_discrete(const DiscreteGenerator& gen, std::span<const double> x_new,
                                   int m, const SamplingOptions& options) {
  if (m < 1) throw std::invalid_argument("sample_discrete: m must be >= 1, got " + std::to_string(m));
  const int k = gen.num_categories();
  const int steps = gen.schedule.steps();
  const Vector x_std = gen.x_scaler.apply(x_new);
  const Vector h = gen.embedder.forward(std::span<const double>(x_std.data(), x_std.size()));
  const internal::ConditionedNet net(gen.denoise_net, k, h,
                                     internal::time_embedding_table(steps, gen.time_dim));

  std::vector<Rng> chains;
  chains.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    chains.push_back(make_rng(options.seed, {options.stream, static_cast<std::uint64_t>(j)}));
  }
  std::uniform_int_distribution<int> uniform_label(0, k - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<int> labels(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) labels[static_cast<std::size_t>(j)] = uniform_label(chains[static_cast<std::size_t>(j)]);

  // For a fixed condition and step the network input depends on the chain
  // only through its current label, so the posterior is tabulated once per
  // step for all K labels. Column c of `cumulative` is the CDF of x_{t-1}
  // given x_t = c.
  std::vector<int> all_labels(static_cast<std::size_t>(k));
  std::iota(all_labels.begin(), all_labels.end(), 0);
  Matrix cumulative(k, k);
  for (int t = steps; t >= 1; --t) {
    const Matrix clean = softmax_columns(net.forward_labels(all_labels, t));
    const double beta = gen.schedule.beta(t);
    const double abar = gen.schedule.alpha_bar(t);
    const double abar_prev = gen.schedule.alpha_bar(t - 1);
    for (int current = 0; current < k; ++current) {
      // q(x_{t-1} = c | x_t, x_0) = Q_t(c, x_t) q(c | x_0) / q(x_t | x_0); with
      // r(x_0) = p(x_0 | x_t) / q(x_t | x_0) the sum over x_0 collapses to
      // Q_t(c, x_t) * (abar_{t-1} r(c) + (1 - abar_{t-1}) / K * sum r).
      Vector r(k);
      for (int c = 0; c < k; ++c) {
        r[c] = clean(c, current) / ((c == current ? abar : 0.0) + (1.0 - abar) / k);
      }
      const double spread = (1.0 - abar_prev) / k * r.sum();
      double acc = 0.0;
      for (int c = 0; c < k; ++c) {
        const double from_prev = (c == current ? 1.0 - beta : 0.0) + beta / k;
        acc += from_prev * (abar_prev * r[c] + spread);
        cumulative(c, current) = acc;
      }
    }
    for (int j = 0; j < m; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const int current = labels[jj];
      const double r = u01(chains[jj]) * cumulative(k - 1, current);
      int pick = 0;
      while (pick < k - 1 && r >= cumulative(pick, current)) ++pick;
      labels[jj] = pick;
    }
  }
  SyntheticSampleSet out;
  out.condition = Eigen::Map<const Vector>(x_new.data(), static_cast<Eigen::Index>(x_new.size()));
  out.payload = std::move(labels);
  return out;
}

}  // namespace gdp
