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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gdp/nn.h"
#include "gdp/rng.h"

namespace {

using gdp::Matrix;
using gdp::Mlp;
using gdp::Vector;

std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

Vector random_vector(int n, gdp::Rng& rng) {
  std::normal_distribution<double> z;
  Vector v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

// Returns ||analytic - numeric|| / max(||analytic||, ||numeric||) over the
// parameter and input gradients of L = g . net(x).
double gradient_check_error(const Mlp& net, const Vector& x, const Vector& g, double h) {
  const gdp::MlpGradients grads = gdp::mlp_backward(net, as_span(x), as_span(g));
  auto loss = [&](const Mlp& n, const Vector& in) { return g.dot(n.forward(as_span(in))); };

  Vector numeric_params(static_cast<Eigen::Index>(net.num_params()));
  Mlp probe = net;
  for (Eigen::Index i = 0; i < numeric_params.size(); ++i) {
    const double saved = probe.params()[i];
    probe.params()[i] = saved + h;
    const double up = loss(probe, x);
    probe.params()[i] = saved - h;
    const double down = loss(probe, x);
    probe.params()[i] = saved;
    numeric_params[i] = (up - down) / (2.0 * h);
  }
  Vector numeric_inputs(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    numeric_inputs[i] = (loss(net, xp) - loss(net, xm)) / (2.0 * h);
  }
  Vector analytic(numeric_params.size() + numeric_inputs.size());
  analytic << grads.params, grads.inputs.col(0);
  Vector numeric(analytic.size());
  numeric << numeric_params, numeric_inputs;
  const double scale = std::max({analytic.norm(), numeric.norm(), 1e-12});
  return (analytic - numeric).norm() / scale;
}

}  // namespace

TEST_CASE("zero network maps every input to zero") {
  const Mlp net({3, 4, 2});
  const Vector x = Vector::LinSpaced(3, -1.0, 2.0);
  CHECK(net.forward(as_span(x)).isZero(0.0));
}

TEST_CASE("single identity layer is the identity") {
  Mlp net({3, 3});
  net.weight(0).setIdentity();
  const Vector v(Vector::LinSpaced(3, -2.0, 5.0));
  CHECK(net.forward(as_span(v)) == v);
}

TEST_CASE("hand-set two layer network") {
  Mlp net({1, 2, 1});
  net.weight(0) << 1.0, -1.0;
  net.weight(1) << 1.0, 1.0;
  const std::vector<double> x{2.0};
  CHECK(net.forward(x)[0] == doctest::Approx(2.0));
}

TEST_CASE("dimension mismatch is rejected") {
  const Mlp net({3, 2});
  const std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS(net.forward(wrong), std::invalid_argument);
  CHECK_THROWS_AS(net.forward_batch(Matrix::Zero(4, 5)), std::invalid_argument);
  const std::vector<double> x{1.0, 2.0, 3.0};
  const std::vector<double> bad_grad{1.0};
  CHECK_THROWS_AS(gdp::mlp_backward(net, x, bad_grad), std::invalid_argument);
}

TEST_CASE("forward pass is deterministic and batch consistent") {
  gdp::Rng rng(3);
  const Mlp net = Mlp::glorot({4, 8, 8, 3}, rng);
  Matrix batch(4, 5);
  for (Eigen::Index j = 0; j < batch.cols(); ++j) batch.col(j) = random_vector(4, rng);
  const Matrix out = net.forward_batch(batch);
  CHECK(out == net.forward_batch(batch));
  for (Eigen::Index j = 0; j < batch.cols(); ++j) {
    const Vector col = batch.col(j);
    CHECK((net.forward(as_span(col)) - out.col(j)).norm() < 1e-12);
  }
}

TEST_CASE("glorot init respects bounds and zero biases") {
  gdp::Rng rng(1);
  const Mlp net = Mlp::glorot({10, 20, 5}, rng);
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const auto w = net.weight(l);
    const double bound = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    CHECK(w.cwiseAbs().maxCoeff() <= bound);
    CHECK(net.bias(l).isZero(0.0));
  }
}

TEST_CASE("linear chain rule") {
  Mlp net({1, 1});
  net.weight(0)(0, 0) = 0.7;
  const std::vector<double> x{3.0};
  const std::vector<double> g{1.0};
  const gdp::MlpGradients grads = gdp::mlp_backward(net, x, g);
  CHECK(grads.params[static_cast<Eigen::Index>(net.weight_offset(0))] == doctest::Approx(3.0));
  CHECK(grads.inputs(0, 0) == doctest::Approx(0.7));
}

TEST_CASE("zero output gradient gives zero parameter gradients") {
  gdp::Rng rng(5);
  const Mlp net = Mlp::glorot({3, 6, 2}, rng);
  const Vector x = random_vector(3, rng);
  const Vector g = Vector::Zero(2);
  CHECK(gdp::mlp_backward(net, as_span(x), as_span(g)).params.isZero(0.0));
}

TEST_CASE("random three layer network matches finite differences") {
  gdp::Rng rng(11);
  Mlp net = Mlp::glorot({4, 7, 5, 2}, rng);
  for (std::size_t l = 0; l < net.num_layers(); ++l) net.bias(l) = random_vector(static_cast<int>(net.bias(l).size()), rng) * 0.1;
  const Vector x = random_vector(4, rng);
  const Vector g = random_vector(2, rng);
  CHECK(gradient_check_error(net, x, g, 1e-6) < 1e-5);
}

TEST_CASE("gradient check over 100 random networks") {
  gdp::Rng rng(2024);
  std::uniform_int_distribution<int> width(1, 9);
  std::uniform_int_distribution<int> depth(1, 4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> dims{width(rng)};
    const int layers = depth(rng);
    for (int l = 0; l < layers; ++l) dims.push_back(width(rng));
    Mlp net = Mlp::glorot(dims, rng);
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
      net.bias(l) = random_vector(static_cast<int>(net.bias(l).size()), rng) * 0.1;
    }
    const Vector x = random_vector(dims.front(), rng);
    const Vector g = random_vector(dims.back(), rng);
    worst = std::max(worst, gradient_check_error(net, x, g, 1e-6));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("batched backward sums per-example gradients") {
  gdp::Rng rng(8);
  const Mlp net = Mlp::glorot({3, 5, 2}, rng);
  Matrix x(3, 4), g(2, 4);
  for (Eigen::Index j = 0; j < 4; ++j) {
    x.col(j) = random_vector(3, rng);
    g.col(j) = random_vector(2, rng);
  }
  const gdp::MlpGradients batched = gdp::backward(net, gdp::forward_with_tape(net, x), g);
  Vector summed = Vector::Zero(static_cast<Eigen::Index>(net.num_params()));
  for (Eigen::Index j = 0; j < 4; ++j) {
    const Vector xj = x.col(j), gj = g.col(j);
    const gdp::MlpGradients one = gdp::mlp_backward(net, as_span(xj), as_span(gj));
    summed += one.params;
    CHECK((one.inputs.col(0) - batched.inputs.col(j)).norm() < 1e-12);
  }
  CHECK((summed - batched.params).norm() < 1e-12);
}

TEST_CASE("adam with zero gradient is the identity") {
  Vector params = Vector::LinSpaced(5, -1.0, 1.0);
  const Vector before = params;
  gdp::AdamState state(5, 1e-3);
  for (int i = 0; i < 3; ++i) gdp::adam_step(params, Vector::Zero(5), state);
  CHECK(params == before);
  CHECK(state.step_count == 3);
}

TEST_CASE("adam first step matches the bias-corrected formula") {
  Vector params(1);
  params << 0.5;
  gdp::AdamState state(1, 1e-3);
  Vector g(1);
  g << 1.0;
  gdp::adam_step(params, g, state);
  // m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
  const double expected = 0.5 - 1e-3 * 1.0 / (1.0 + 1e-8);
  CHECK(params[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(params[0] - 0.5 == doctest::Approx(-0.001).epsilon(1e-6));
}

TEST_CASE("adam descends monotonically on a linear loss") {
  Vector params(1);
  params << 0.0;
  gdp::AdamState state(1, 1e-2);
  Vector g(1);
  g << 2.0;
  gdp::adam_step(params, g, state);
  const double first = params[0];
  gdp::adam_step(params, g, state);
  CHECK(first < 0.0);
  CHECK(params[0] < first);
}

TEST_CASE("adam rejects mismatched sizes") {
  Vector params = Vector::Zero(3);
  gdp::AdamState state(3);
  CHECK_THROWS_AS(gdp::adam_step(params, Vector::Zero(2), state), std::invalid_argument);
}

TEST_CASE("time embedding basics") {
  const Vector e0 = gdp::time_embed(0, 1000, 16);
  REQUIRE(e0.size() == 16);
  CHECK(e0.head(8).isZero(0.0));
  CHECK(e0.tail(8).isOnes(0.0));
  for (int t : {1, 17, 500, 1000}) {
    const Vector e = gdp::time_embed(t, 1000, 16);
    CHECK(e.cwiseAbs().maxCoeff() <= 1.0);
  }
  CHECK_THROWS_AS(gdp::time_embed(3, 1000, 15), std::invalid_argument);
  CHECK_THROWS_AS(gdp::time_embed(1001, 1000, 16), std::invalid_argument);
}

TEST_CASE("time embeddings never collide") {
  std::vector<Vector> table;
  for (int t = 0; t <= 1000; ++t) table.push_back(gdp::time_embed(t, 1000, 16));
  double closest = INFINITY;
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t b = a + 1; b < table.size(); ++b) {
      closest = std::min(closest, (table[a] - table[b]).squaredNorm());
    }
  }
  CHECK(closest > 1e-8);
}

TEST_CASE("derived seeds separate streams") {
  CHECK(gdp::derive_seed(1, {2, 3}) == gdp::derive_seed(1, {2, 3}));
  CHECK(gdp::derive_seed(1, {2, 3}) != gdp::derive_seed(1, {3, 2}));
  CHECK(gdp::derive_seed(1, {2}) != gdp::derive_seed(2, {2}));
}

TEST_CASE("parallel_for visits each index once and propagates errors") {
  std::vector<int> hits(1000, 0);
  gdp::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(gdp::parallel_for(
                      10, [](std::size_t i) { if (i == 7) throw std::runtime_error("boom"); }, 3),
                  std::runtime_error);
}
