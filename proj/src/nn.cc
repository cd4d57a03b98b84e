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

#include "gdp/nn.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gdp {
namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("Mlp needs at least an input and an output dimension");
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("Mlp layer dimensions must be positive");
  }
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_dims) : dims_(std::move(layer_dims)) {
  check_dims(dims_);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    offsets_.push_back(offset);
    offset += static_cast<std::size_t>(dims_[l + 1]) * (dims_[l] + 1);
  }
  params_ = Vector::Zero(static_cast<Eigen::Index>(offset));
}

Mlp Mlp::glorot(std::vector<int> layer_dims, Rng& rng) {
  Mlp net(std::move(layer_dims));
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const double fan_in = net.dims_[l];
    const double fan_out = net.dims_[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    auto w = net.weight(l);
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = uniform(rng);
    }
  }
  return net;
}

std::size_t Mlp::bias_offset(std::size_t layer) const {
  return offsets_[layer] + static_cast<std::size_t>(dims_[layer + 1]) * dims_[layer];
}

Eigen::Map<const Matrix> Mlp::weight(std::size_t layer) const {
  return {params_.data() + weight_offset(layer), dims_[layer + 1], dims_[layer]};
}

Eigen::Map<Matrix> Mlp::weight(std::size_t layer) {
  return {params_.data() + weight_offset(layer), dims_[layer + 1], dims_[layer]};
}

Eigen::Map<const Vector> Mlp::bias(std::size_t layer) const {
  return {params_.data() + bias_offset(layer), dims_[layer + 1]};
}

Eigen::Map<Vector> Mlp::bias(std::size_t layer) {
  return {params_.data() + bias_offset(layer), dims_[layer + 1]};
}

Vector Mlp::forward(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_dim()) {
    throw std::invalid_argument("Mlp::forward: input has " + std::to_string(input.size()) +
                                " entries, network expects " + std::to_string(input_dim()));
  }
  Matrix x = Eigen::Map<const Vector>(input.data(), static_cast<Eigen::Index>(input.size()));
  return forward_batch(x).col(0);
}

Matrix Mlp::forward_batch(const Matrix& inputs) const {
  if (inputs.rows() != input_dim()) {
    throw std::invalid_argument("Mlp::forward_batch: input has " + std::to_string(inputs.rows()) +
                                " rows, network expects " + std::to_string(input_dim()));
  }
  Matrix x = inputs;
  for (std::size_t l = 0; l < num_layers(); ++l) {
    Matrix z = weight(l) * x;
    z.colwise() += bias(l);
    if (l + 1 < num_layers()) z = z.cwiseMax(0.0);
    x = std::move(z);
  }
  return x;
}

MlpTape forward_with_tape(const Mlp& net, const Matrix& inputs) {
  if (inputs.rows() != net.input_dim()) {
    throw std::invalid_argument("forward_with_tape: input dimension mismatch");
  }
  MlpTape tape;
  tape.layer_inputs.reserve(net.num_layers());
  tape.layer_inputs.push_back(inputs);
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    Matrix z = net.weight(l) * tape.layer_inputs.back();
    z.colwise() += net.bias(l);
    if (l + 1 < net.num_layers()) {
      tape.layer_inputs.push_back(z.cwiseMax(0.0));
    } else {
      tape.output = std::move(z);
    }
  }
  return tape;
}

MlpGradients backward(const Mlp& net, const MlpTape& tape, const Matrix& output_gradient) {
  if (output_gradient.rows() != net.output_dim() ||
      output_gradient.cols() != tape.output.cols()) {
    throw std::invalid_argument("backward: output gradient shape does not match the tape");
  }
  MlpGradients grads;
  grads.params = Vector::Zero(static_cast<Eigen::Index>(net.num_params()));
  Matrix delta = output_gradient;
  for (std::size_t l = net.num_layers(); l-- > 0;) {
    const Matrix& a = tape.layer_inputs[l];
    const int out = net.layer_dims()[l + 1];
    Eigen::Map<Matrix>(grads.params.data() + net.weight_offset(l), out, net.layer_dims()[l])
        .noalias() = delta * a.transpose();
    Eigen::Map<Vector>(grads.params.data() + net.bias_offset(l), out) = delta.rowwise().sum();
    Matrix upstream = net.weight(l).transpose() * delta;
    if (l > 0) upstream = (a.array() > 0.0).select(upstream, 0.0);
    delta = std::move(upstream);
  }
  grads.inputs = std::move(delta);
  return grads;
}

MlpGradients mlp_backward(const Mlp& net, std::span<const double> input,
                          std::span<const double> output_gradient) {
  if (static_cast<int>(input.size()) != net.input_dim() ||
      static_cast<int>(output_gradient.size()) != net.output_dim()) {
    throw std::invalid_argument("mlp_backward: dimension mismatch");
  }
  Matrix x = Eigen::Map<const Vector>(input.data(), static_cast<Eigen::Index>(input.size()));
  Matrix g = Eigen::Map<const Vector>(output_gradient.data(),
                                      static_cast<Eigen::Index>(output_gradient.size()));
  return backward(net, forward_with_tape(net, x), g);
}

AdamState::AdamState(std::size_t num_params, double learning_rate)
    : first_moment(Vector::Zero(static_cast<Eigen::Index>(num_params))),
      second_moment(Vector::Zero(static_cast<Eigen::Index>(num_params))),
      learning_rate(learning_rate) {}

void adam_step(Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam_step: parameter, gradient and state sizes differ");
  }
  ++state.step_count;
  state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * grads;
  state.second_moment =
      state.beta2 * state.second_moment + (1.0 - state.beta2) * grads.cwiseAbs2();
  const double t = static_cast<double>(state.step_count);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  params.array() -= state.learning_rate * (state.first_moment.array() / c1) /
                    ((state.second_moment.array() / c2).sqrt() + state.epsilon);
}

Vector time_embed(int t, int total_steps, int dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument("time_embed: dim must be a positive even integer, got " +
                                std::to_string(dim));
  }
  if (total_steps <= 0 || t < 0 || t > total_steps) {
    throw std::invalid_argument("time_embed: step " + std::to_string(t) + " outside [0, " +
                                std::to_string(total_steps) + "]");
  }
  const int half = dim / 2;
  const double s = static_cast<double>(t) / total_steps;
  Vector out(dim);
  for (int k = 0; k < half; ++k) {
    const double freq = half == 1 ? 1.0 : std::pow(10000.0, static_cast<double>(k) / (half - 1));
    out[k] = std::sin(freq * s);
    out[half + k] = std::cos(freq * s);
  }
  return out;
}

}  // namespace gdp
