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

#include "gdp/diffusion.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "conditioned_net.h"
#include "trainer.h"

namespace gdp {

NoiseSchedule NoiseSchedule::linear(int steps, double beta_min, double beta_max) {
  if (steps < 1) throw std::invalid_argument("NoiseSchedule: steps must be >= 1");
  if (!(beta_min > 0.0 && beta_max < 1.0 && beta_min <= beta_max)) {
    throw std::invalid_argument("NoiseSchedule: need 0 < beta_min <= beta_max < 1");
  }
  NoiseSchedule s;
  s.steps_ = steps;
  s.beta_min_ = beta_min;
  s.beta_max_ = beta_max;
  s.beta_.resize(static_cast<std::size_t>(steps));
  s.alpha_bar_.resize(static_cast<std::size_t>(steps) + 1);
  s.alpha_bar_[0] = 1.0;
  for (int t = 1; t <= steps; ++t) {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(t - 1) / (steps - 1);
    const double b = beta_min + frac * (beta_max - beta_min);
    s.beta_[static_cast<std::size_t>(t - 1)] = b;
    s.alpha_bar_[static_cast<std::size_t>(t)] = s.alpha_bar_[static_cast<std::size_t>(t - 1)] * (1.0 - b);
  }
  return s;
}

void NoiseSchedule::check_step(int t, int lo) const {
  if (t < lo || t > steps_) {
    throw std::out_of_range("diffusion step " + std::to_string(t) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(steps_) + "]");
  }
}

double NoiseSchedule::beta(int t) const {
  check_step(t, 1);
  return beta_[static_cast<std::size_t>(t - 1)];
}

double NoiseSchedule::alpha_bar(int t) const {
  check_step(t, 0);
  return alpha_bar_[static_cast<std::size_t>(t)];
}

double NoiseSchedule::mu(int t) const { return std::sqrt(alpha_bar(t)); }

double NoiseSchedule::sigma(int t) const { return std::sqrt(1.0 - alpha_bar(t)); }

void ConditionalGenerator::validate() const {
  if (embedder.num_layers() == 0 || score_net.num_layers() == 0) {
    throw std::invalid_argument("generator networks are empty");
  }
  if (score_net.input_dim() != response_dim() + embed_dim() + time_dim) {
    throw std::invalid_argument("score network input must be d_y + embed_dim + time_dim = " +
                                std::to_string(response_dim() + embed_dim() + time_dim) +
                                ", got " + std::to_string(score_net.input_dim()));
  }
  if (x_scaler.dim() != predictor_dim() || y_scaler.dim() != response_dim()) {
    throw std::invalid_argument("standardizer dimensions do not match the networks");
  }
  if ((x_scaler.scale.array() <= 0.0).any() || (y_scaler.scale.array() <= 0.0).any()) {
    throw std::invalid_argument("standardizer scales must be strictly positive");
  }
  if (schedule.steps() < 1) throw std::invalid_argument("generator has no noise schedule");
}

Matrix ConditionalGenerator::predict_noise(const Matrix& y_t, const Matrix& h,
                                           std::span<const int> steps) const {
  if (static_cast<Eigen::Index>(steps.size()) != y_t.cols() || h.cols() != y_t.cols()) {
    throw std::invalid_argument("predict_noise: batch sizes differ");
  }
  Matrix temb(time_dim, y_t.cols());
  for (Eigen::Index j = 0; j < y_t.cols(); ++j) {
    const int t = steps[static_cast<std::size_t>(j)];
    if (t < 1 || t > schedule.steps()) throw std::out_of_range("predict_noise: step out of range");
    temb.col(j) = time_embed(t, schedule.steps(), time_dim);
  }
  Matrix in(score_net.input_dim(), y_t.cols());
  in << y_t, h, temb;
  return score_net.forward_batch(in);
}

NoisedResponse forward_noise(const Vector& y0, int t, const NoiseSchedule& schedule, Rng& rng) {
  if (t < 1 || t > schedule.steps()) {
    throw std::out_of_range("forward_noise: step " + std::to_string(t) + " outside [1, " +
                            std::to_string(schedule.steps()) + "]");
  }
  std::normal_distribution<double> normal;
  Vector eps(y0.size());
  for (Eigen::Index i = 0; i < eps.size(); ++i) eps[i] = normal(rng);
  Vector y_t = forward_noise(y0, t, eps, schedule);
  return {std::move(y_t), std::move(eps)};
}

Vector forward_noise(const Vector& y0, int t, const Vector& noise, const NoiseSchedule& schedule) {
  if (t < 1 || t > schedule.steps()) {
    throw std::out_of_range("forward_noise: step " + std::to_string(t) + " outside [1, " +
                            std::to_string(schedule.steps()) + "]");
  }
  if (noise.size() != y0.size()) throw std::invalid_argument("forward_noise: noise size mismatch");
  return schedule.mu(t) * y0 + schedule.sigma(t) * noise;
}

namespace {

// Clean payload: standardized responses. Target: the injected noise.
class GaussianTask {
 public:
  GaussianTask(const NoiseSchedule& schedule, int response_dim)
      : schedule_(schedule), response_dim_(response_dim) {}

  int payload_dim() const { return response_dim_; }

  void corrupt(const Matrix& clean, std::span<const int> steps, Rng& rng, Matrix& payload,
               Matrix& target) const {
    std::normal_distribution<double> normal;
    target.resize(clean.rows(), clean.cols());
    payload.resize(clean.rows(), clean.cols());
    for (Eigen::Index j = 0; j < clean.cols(); ++j) {
      const int t = steps[static_cast<std::size_t>(j)];
      const double mu = schedule_.mu(t);
      const double sigma = schedule_.sigma(t);
      for (Eigen::Index i = 0; i < clean.rows(); ++i) {
        const double e = normal(rng);
        target(i, j) = e;
        payload(i, j) = mu * clean(i, j) + sigma * e;
      }
    }
  }

  double loss(const Matrix& output, const Matrix& target, Matrix* grad) const {
    const double batch = static_cast<double>(output.cols());
    const Matrix diff = output - target;
    if (grad != nullptr) *grad = (2.0 / batch) * diff;
    return diff.squaredNorm() / batch;
  }

 private:
  const NoiseSchedule& schedule_;
  int response_dim_;
};

void check_dataset(const Dataset& data) {
  if (data.x.rows() == 0 || data.y.rows() == 0) throw std::invalid_argument("dataset is empty");
  if (data.x.rows() != data.y.rows()) {
    throw std::invalid_argument("dataset x and y have different row counts");
  }
  if (data.y.cols() == 0 || data.x.cols() == 0) {
    throw std::invalid_argument("dataset needs at least one predictor and one response column");
  }
  if (!data.x.allFinite() || !data.y.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite values");
  }
}

Matrix rows_to_columns(const Matrix& rows, std::span<const std::size_t> idx) {
  Matrix out(rows.cols(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = rows.row(static_cast<Eigen::Index>(idx[j])).transpose();
  }
  return out;
}

std::vector<int> hidden_dims(int in, int width, int depth, int out) {
  std::vector<int> dims{in};
  for (int l = 1; l < depth; ++l) dims.push_back(width);
  dims.push_back(out);
  return dims;
}

}  // namespace

ConditionalGenerator fit(ConditionalGenerator gen, const Dataset& data, const TrainConfig& config,
                         const FitOptions& options) {
  config.validate();
  check_dataset(data);
  gen.validate();
  if (data.x.cols() != gen.predictor_dim() || data.y.cols() != gen.response_dim()) {
    throw std::invalid_argument("dataset dimensions do not match the generator");
  }
  const internal::SplitIndices split =
      internal::split_rows(static_cast<std::size_t>(data.x.rows()), config.val_fraction, config.seed);
  if (!options.keep_scalers) {
    Matrix x_tr(static_cast<Eigen::Index>(split.train.size()), data.x.cols());
    Matrix y_tr(static_cast<Eigen::Index>(split.train.size()), data.y.cols());
    for (std::size_t i = 0; i < split.train.size(); ++i) {
      x_tr.row(static_cast<Eigen::Index>(i)) = data.x.row(static_cast<Eigen::Index>(split.train[i]));
      y_tr.row(static_cast<Eigen::Index>(i)) = data.y.row(static_cast<Eigen::Index>(split.train[i]));
    }
    gen.x_scaler = Standardizer::fit(x_tr, false, "predictor");
    gen.y_scaler = Standardizer::fit(y_tr, true, "response");
  }
  const Matrix x_std = gen.x_scaler.apply(data.x);
  const Matrix y_std = gen.y_scaler.apply(data.y);

  GaussianTask task(gen.schedule, gen.response_dim());
  internal::NetsToTrain nets{gen.score_net, gen.embedder, gen.time_dim, gen.schedule.steps(),
                             options.freeze_score_net, options.freeze_embedder};
  const Role role = gen.info.role;
  gen.info = internal::run_training(nets, rows_to_columns(x_std, split.train),
                                    rows_to_columns(y_std, split.train),
                                    rows_to_columns(x_std, split.validation),
                                    rows_to_columns(y_std, split.validation), task, config);
  gen.info.role = role;
  return gen;
}

ConditionalGenerator train(const Dataset& data, const TrainConfig& config, Role role) {
  config.validate();
  check_dataset(data);
  const int p = static_cast<int>(data.x.cols());
  const int dy = static_cast<int>(data.y.cols());
  Rng init = make_rng(config.seed, {internal::kInitStream});
  ConditionalGenerator gen;
  gen.embedder = Mlp::glorot(hidden_dims(p, config.width, config.depth, config.embed_dim), init);
  gen.score_net = Mlp::glorot(
      hidden_dims(dy + config.embed_dim + config.time_dim, config.width, config.depth, dy), init);
  gen.schedule = NoiseSchedule::linear(config.timesteps, config.beta_min, config.beta_max);
  gen.time_dim = config.time_dim;
  gen.x_scaler = {Vector::Zero(p), Vector::Ones(p)};
  gen.y_scaler = {Vector::Zero(dy), Vector::Ones(dy)};
  gen.info.role = role;
  return fit(std::move(gen), data, config, FitOptions{});
}

double score_matching_loss(const ConditionalGenerator& gen, const Matrix& x_std,
                           const Matrix& y_std, Rng& rng) {
  if (x_std.rows() == 0 || x_std.rows() != y_std.rows()) {
    throw std::invalid_argument("score_matching_loss: batch must be nonempty with matching rows");
  }
  const Eigen::Index n = x_std.rows();
  std::uniform_int_distribution<int> step_dist(1, gen.schedule.steps());
  std::vector<int> steps(static_cast<std::size_t>(n));
  for (int& t : steps) t = step_dist(rng);
  GaussianTask task(gen.schedule, gen.response_dim());
  Matrix payload, target;
  task.corrupt(y_std.transpose(), steps, rng, payload, target);
  const Matrix h = gen.embedder.forward_batch(x_std.transpose());
  return task.loss(gen.predict_noise(payload, h, steps), target, nullptr);
}

SyntheticSampleSet sample(const ConditionalGenerator& gen, std::span<const double> x_new, int m,
                          const SamplingOptions& options) {
  if (m < 1) throw std::invalid_argument("sample: m must be >= 1, got " + std::to_string(m));
  const int steps = gen.schedule.steps();
  if (options.stride < 1 || steps % options.stride != 0) {
    throw std::invalid_argument("sample: stride " + std::to_string(options.stride) +
                                " must divide the number of diffusion steps " +
                                std::to_string(steps));
  }
  const Vector x_std = gen.x_scaler.apply(x_new);
  const Vector h = gen.embedder.forward(std::span<const double>(x_std.data(), x_std.size()));
  const internal::ConditionedNet net(gen.score_net, gen.response_dim(), h,
                                     internal::time_embedding_table(steps, gen.time_dim));

  const int dy = gen.response_dim();
  std::vector<Rng> chains;
  chains.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    chains.push_back(make_rng(options.seed, {options.stream, static_cast<std::uint64_t>(j)}));
  }
  // One distribution per chain: normal_distribution caches half of each
  // generated pair, so sharing it would couple neighbouring chains.
  std::vector<std::normal_distribution<double>> normals(static_cast<std::size_t>(m));
  auto draw_noise = [&](Matrix& z) {
    for (int j = 0; j < m; ++j) {
      const auto k = static_cast<std::size_t>(j);
      for (int i = 0; i < dy; ++i) z(i, j) = normals[k](chains[k]);
    }
  };

  Matrix y(dy, m);
  draw_noise(y);
  Matrix z(dy, m);
  for (int t = steps; t > 0; t -= options.stride) {
    const int prev = t - options.stride;
    const double abar_t = gen.schedule.alpha_bar(t);
    const double alpha = abar_t / gen.schedule.alpha_bar(prev);
    const double beta = 1.0 - alpha;
    const Matrix eps = net.forward(y, t);
    y = (y - (beta / std::sqrt(1.0 - abar_t)) * eps) / std::sqrt(alpha);
    if (prev > 0) {
      draw_noise(z);
      y += std::sqrt(beta) * z;
    }
  }
  SyntheticSampleSet out;
  out.condition = Eigen::Map<const Vector>(x_new.data(), static_cast<Eigen::Index>(x_new.size()));
  out.payload = gen.y_scaler.invert(y.transpose());
  return out;
}

}  // namespace gdp
