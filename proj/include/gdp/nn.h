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

#ifndef GDP_NN_H_
#define GDP_NN_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gdp/rng.h"

namespace gdp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense feed-forward network. Hidden layers use ReLU, the output layer is
// linear. All parameters live in one flat vector (layer by layer, weight
// matrix in column-major order followed by the bias) so that optimizers and
// gradient buffers can treat the network as a single parameter block.
//
// Batched calls take one example per *column*.
class Mlp {
 public:
  Mlp() = default;

  // Zero-initialized network with the given layer widths (input first).
  explicit Mlp(std::vector<int> layer_dims);

  // Glorot-uniform weights, zero biases.
  static Mlp glorot(std::vector<int> layer_dims, Rng& rng);

  const std::vector<int>& layer_dims() const { return dims_; }
  std::size_t num_layers() const { return dims_.empty() ? 0 : dims_.size() - 1; }
  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  std::size_t num_params() const { return static_cast<std::size_t>(params_.size()); }

  Eigen::Map<const Matrix> weight(std::size_t layer) const;
  Eigen::Map<Matrix> weight(std::size_t layer);
  Eigen::Map<const Vector> bias(std::size_t layer) const;
  Eigen::Map<Vector> bias(std::size_t layer);

  // Positions of layer `layer`'s weight matrix and bias inside params().
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const;

  const Vector& params() const { return params_; }
  Vector& params() { return params_; }

  Vector forward(std::span<const double> input) const;
  Matrix forward_batch(const Matrix& inputs) const;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  Vector params_;
};

// Activations recorded by a training forward pass. `layer_inputs[l]` is the
// input to layer l (post-activation of layer l-1); `output` is the linear
// output of the last layer.
struct MlpTape {
  std::vector<Matrix> layer_inputs;
  Matrix output;
};

MlpTape forward_with_tape(const Mlp& net, const Matrix& inputs);

struct MlpGradients {
  Vector params;     // same layout as Mlp::params()
  Matrix inputs;     // dLoss/dInput, one column per example
};

// Backpropagates `output_gradient` (dLoss/dOutput, one column per example)
// through the activations recorded in `tape`. Parameter gradients are summed
// over the batch.
MlpGradients backward(const Mlp& net, const MlpTape& tape,
                      const Matrix& output_gradient);

// Single-example convenience over the batched pair above.
MlpGradients mlp_backward(const Mlp& net, std::span<const double> input,
                          std::span<const double> output_gradient);

struct AdamState {
  explicit AdamState(std::size_t num_params, double learning_rate = 1e-3);

  long step_count = 0;
  Vector first_moment;
  Vector second_moment;
  double learning_rate;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam update, in place.
void adam_step(Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grads,
               AdamState& state);

// Sinusoidal embedding of step t in [0, total_steps]: the first dim/2
// coordinates are sin(f_k * t / total_steps), the rest the matching cosines,
// with f_k geometric from 1 to 10000.
Vector time_embed(int t, int total_steps, int dim);

}  // namespace gdp

#endif  // GDP_NN_H_
