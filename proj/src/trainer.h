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

// Training loop shared by the Gaussian and discrete generators. A task
// supplies the corruption of clean payloads and the loss on the network
// output; everything else (batching, embedder backprop, Adam, early stopping)
// lives here.

#ifndef GDP_SRC_TRAINER_H_
#define GDP_SRC_TRAINER_H_

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "gdp/generator.h"
#include "gdp/nn.h"
#include "gdp/rng.h"

namespace gdp::internal {

enum Stream : std::uint64_t {
  kSplitStream = 1,
  kTrainStream = 2,
  kValidationStream = 3,
  kInitStream = 4,
};

// Columns of `table` are time_embed(t, steps, dim) for t = 0..steps.
Matrix time_embedding_table(int steps, int dim);

// Stacks [payload; h; temb(t_j)] column by column.
Matrix assemble_input(const Matrix& payload, const Matrix& h, const Matrix& temb_table,
                      std::span<const int> steps);

Matrix gather_columns(const Matrix& m, std::span<const std::size_t> idx);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// Shuffles row indices under the seed and holds out the last
// ceil(val_fraction * n) of them (at least one, leaving at least one).
SplitIndices split_rows(std::size_t n, double val_fraction, std::uint64_t seed);

struct NetsToTrain {
  Mlp& net;
  Mlp& embedder;
  int time_dim;
  int timesteps;
  bool freeze_net = false;
  bool freeze_embedder = false;
};

inline constexpr Eigen::Index kMinValidationDraws = 8192;

// Task concept:
//   int payload_dim() const;
//   void corrupt(const Matrix& clean, std::span<const int> t, Rng&, Matrix& payload,
//                Matrix& target) const;
//   double loss(const Matrix& output, const Matrix& target, Matrix* grad) const;
//     returns the batch-mean loss and, if grad != nullptr, its gradient.
template <class Task>
TrainingInfo run_training(NetsToTrain nets, const Matrix& x_train, const Matrix& clean_train,
                          const Matrix& x_val_rows, const Matrix& clean_val_rows, const Task& task,
                          const TrainConfig& config) {
  const Matrix temb = time_embedding_table(nets.timesteps, nets.time_dim);
  const int payload_dim = task.payload_dim();
  const int embed_dim = nets.embedder.output_dim();
  const auto n_train = static_cast<std::size_t>(x_train.cols());
  // Small validation sets are repeated (each copy with its own corruption)
  // so that the early-stopping signal is not dominated by noise draws.
  const auto repeats = static_cast<Eigen::Index>(
      (kMinValidationDraws + x_val_rows.cols() - 1) / x_val_rows.cols());
  const Matrix x_val = x_val_rows.replicate(1, repeats);
  const Matrix clean_val = clean_val_rows.replicate(1, repeats);
  const auto n_val = static_cast<std::size_t>(x_val.cols());

  Rng rng = make_rng(config.seed, {kTrainStream});
  std::uniform_int_distribution<int> step_dist(1, nets.timesteps);

  // Validation corruption is drawn once so that epoch losses are comparable.
  Rng val_rng = make_rng(config.seed, {kValidationStream});
  std::vector<int> val_steps(n_val);
  for (int& t : val_steps) t = step_dist(val_rng);
  Matrix val_payload, val_target;
  task.corrupt(clean_val, val_steps, val_rng, val_payload, val_target);

  auto validation_loss = [&]() {
    double total = 0.0;
    const std::size_t chunk = std::max<std::size_t>(1, static_cast<std::size_t>(config.batch_size));
    for (std::size_t begin = 0; begin < n_val; begin += chunk) {
      const auto len = static_cast<Eigen::Index>(std::min(chunk, n_val - begin));
      const auto b = static_cast<Eigen::Index>(begin);
      const Matrix h = nets.embedder.forward_batch(x_val.middleCols(b, len));
      const Matrix in = assemble_input(val_payload.middleCols(b, len), h, temb,
                                       std::span<const int>(val_steps).subspan(begin, len));
      const Matrix out = nets.net.forward_batch(in);
      total += task.loss(out, val_target.middleCols(b, len), nullptr) * static_cast<double>(len);
    }
    return total / static_cast<double>(n_val);
  };

  TrainingInfo info;
  info.seed = config.seed;
  info.n_train = n_train;

  AdamState net_opt(nets.net.num_params(), config.learning_rate);
  AdamState emb_opt(nets.embedder.num_params(), config.learning_rate);

  // With averaging on, `live_*` hold the raw Adam iterates while the networks
  // carry the averages between epochs.
  const bool averaging = config.ema_decay > 0.0;
  Vector live_net = nets.net.params();
  Vector live_emb = nets.embedder.params();

  double best = validation_loss();
  Vector best_net = nets.net.params();
  Vector best_emb = nets.embedder.params();
  int since_best = 0;

  std::vector<std::size_t> order(n_train);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> steps;
  Matrix payload, target, grad;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    Vector avg_net, avg_emb;
    if (averaging) {
      avg_net = nets.net.params();
      avg_emb = nets.embedder.params();
      nets.net.params() = live_net;
      nets.embedder.params() = live_emb;
    }
    for (std::size_t begin = 0; begin < n_train; begin += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t len = std::min<std::size_t>(config.batch_size, n_train - begin);
      const std::span<const std::size_t> idx(order.data() + begin, len);
      const Matrix xb = gather_columns(x_train, idx);
      const Matrix cb = gather_columns(clean_train, idx);
      steps.resize(len);
      for (int& t : steps) t = step_dist(rng);
      task.corrupt(cb, steps, rng, payload, target);

      const MlpTape emb_tape = forward_with_tape(nets.embedder, xb);
      const MlpTape net_tape =
          forward_with_tape(nets.net, assemble_input(payload, emb_tape.output, temb, steps));
      epoch_loss += task.loss(net_tape.output, target, &grad) * static_cast<double>(len);

      const MlpGradients net_grads = backward(nets.net, net_tape, grad);
      if (!nets.freeze_embedder) {
        const MlpGradients emb_grads =
            backward(nets.embedder, emb_tape, net_grads.inputs.middleRows(payload_dim, embed_dim));
        adam_step(nets.embedder.params(), emb_grads.params, emb_opt);
      }
      if (!nets.freeze_net) adam_step(nets.net.params(), net_grads.params, net_opt);
      if (averaging) {
        const double d = config.ema_decay;
        avg_net = d * avg_net + (1.0 - d) * nets.net.params();
        avg_emb = d * avg_emb + (1.0 - d) * nets.embedder.params();
      }
    }
    if (averaging) {
      live_net.swap(nets.net.params());
      live_emb.swap(nets.embedder.params());
      nets.net.params() = avg_net;
      nets.embedder.params() = avg_emb;
    }
    info.train_loss_history.push_back(epoch_loss / static_cast<double>(n_train));
    const double val = validation_loss();
    info.val_loss_history.push_back(val);
    info.epochs_run = epoch + 1;
    if (val < best) {
      best = val;
      best_net = nets.net.params();
      best_emb = nets.embedder.params();
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  nets.net.params() = best_net;
  nets.embedder.params() = best_emb;
  info.final_val_loss = best;
  return info;
}

}  // namespace gdp::internal

#endif  // GDP_SRC_TRAINER_H_
