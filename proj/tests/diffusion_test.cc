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

#include <cmath>
#include <stdexcept>

#include "gdp/diffusion.h"
#include "gdp/metrics.h"
#include "gdp/simbench.h"
#include "test_support.h"

namespace {

using gdp::ConditionalGenerator;
using gdp::Matrix;
using gdp::NoiseSchedule;
using gdp::Vector;
using namespace gdp::testing;

// A generator whose networks are identically zero, so eps_hat == 0.
ConditionalGenerator zero_generator(int p, double y_mean, double y_scale) {
  ConditionalGenerator gen;
  gen.embedder = gdp::Mlp({p, 4});
  gen.time_dim = 16;
  gen.score_net = gdp::Mlp({1 + 4 + 16, 8, 1});
  gen.schedule = NoiseSchedule::linear();
  gen.x_scaler.mean = Vector::Zero(p);
  gen.x_scaler.scale = Vector::Ones(p);
  gen.y_scaler.mean = Vector::Constant(1, y_mean);
  gen.y_scaler.scale = Vector::Constant(1, y_scale);
  return gen;
}

const ConditionalGenerator& toy_generator() {
  static const ConditionalGenerator gen = [] {
    gdp::Rng rng(101);
    return gdp::train(gdp::make_linear_gaussian_toy(5000, rng), toy_config(7));
  }();
  return gen;
}

std::vector<double> draw(const ConditionalGenerator& gen, double x, int m, int stride,
                         std::uint64_t seed) {
  const std::vector<double> xs{x};
  return column(gdp::sample(gen, xs, m, {stride, seed, 0}).values());
}

}  // namespace

TEST_CASE("default schedule endpoints and monotonicity") {
  const NoiseSchedule s = NoiseSchedule::linear();
  CHECK(s.steps() == 1000);
  CHECK(s.beta(1) == doctest::Approx(1e-4));
  CHECK(s.beta(1000) == doctest::Approx(0.02));
  CHECK(s.alpha_bar(0) == 1.0);
  for (int t = 1; t <= 1000; ++t) {
    CHECK_MESSAGE(s.beta(t) > 0.0, t);
    CHECK_MESSAGE(s.beta(t) < 1.0, t);
    if (t > 1) CHECK_MESSAGE(s.beta(t) >= s.beta(t - 1), t);
    CHECK_MESSAGE(s.alpha_bar(t) < s.alpha_bar(t - 1), t);
  }
  CHECK_THROWS_AS(s.beta(0), std::out_of_range);
  CHECK_THROWS_AS(s.alpha_bar(1001), std::out_of_range);
}

TEST_CASE("alpha_bar at T equals the direct product") {
  const NoiseSchedule s = NoiseSchedule::linear();
  double product = 1.0;
  for (int t = 1; t <= 1000; ++t) product *= 1.0 - (1e-4 + (0.02 - 1e-4) * (t - 1) / 999.0);
  CHECK(std::abs(s.alpha_bar(1000) - product) < 1e-4);
  CHECK(std::abs(s.alpha_bar(1000) - product) < 1e-15);
}

TEST_CASE("variance preservation identity") {
  const NoiseSchedule s = NoiseSchedule::linear();
  double worst = 0.0;
  for (int t = 0; t <= 1000; ++t) {
    worst = std::max(worst, std::abs(s.mu(t) * s.mu(t) + s.sigma(t) * s.sigma(t) - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("forward noise") {
  const NoiseSchedule s = NoiseSchedule::linear();
  Vector y0(2);
  y0 << 1.5, -0.5;
  SUBCASE("zero noise gives the scaled clean response") {
    const Vector yt = gdp::forward_noise(y0, 400, Vector::Zero(2), s);
    CHECK(yt == std::sqrt(s.alpha_bar(400)) * y0);
  }
  SUBCASE("first step is near the identity") {
    gdp::Rng rng(4);
    Vector total = Vector::Zero(2);
    for (int i = 0; i < 10000; ++i) total += gdp::forward_noise(y0, 1, s, rng).y_t;
    CHECK((total / 10000.0 - y0).cwiseAbs().maxCoeff() < 1e-2);
  }
  SUBCASE("returned noise reproduces y_t") {
    gdp::Rng rng(5);
    const gdp::NoisedResponse r = gdp::forward_noise(y0, 250, s, rng);
    CHECK((r.y_t - gdp::forward_noise(y0, 250, r.noise, s)).norm() == 0.0);
  }
  SUBCASE("step range is enforced") {
    gdp::Rng rng(6);
    CHECK_THROWS(gdp::forward_noise(y0, 0, s, rng));
    CHECK_THROWS(gdp::forward_noise(y0, 1001, s, rng));
  }
}

TEST_CASE("prior convergence at T") {
  const NoiseSchedule s = NoiseSchedule::linear();
  // Exact marginal: mean mu_T * y0, variance sigma_T^2.
  CHECK(s.mu(1000) < 1e-2);
  CHECK(std::abs(s.sigma(1000) * s.sigma(1000) - 1.0) < 1e-3);
  gdp::Rng rng(9);
  Vector y0(1);
  y0 << 3.0;
  std::vector<double> draws;
  for (int i = 0; i < 100000; ++i) draws.push_back(gdp::forward_noise(y0, 1000, s, rng).y_t[0]);
  CHECK(std::abs(mean_of(draws)) < 1e-2 * 3.0);
  // Monte-Carlo standard error of the variance at 1e5 draws is ~0.0045.
  CHECK(std::abs(sd_of(draws) * sd_of(draws) - 1.0) < 0.02);
}

TEST_CASE("zero network loss is the noise energy") {
  const ConditionalGenerator gen = zero_generator(3, 0.0, 1.0);
  gdp::Rng data_rng(12);
  std::normal_distribution<double> z;
  Matrix x(100000, 3), y(100000, 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(data_rng);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = z(data_rng);
  gdp::Rng rng(13);
  const double loss = gdp::score_matching_loss(gen, x, y, rng);
  CHECK(loss == doctest::Approx(1.0).epsilon(0.02));
  gdp::Rng again(13);
  CHECK(gdp::score_matching_loss(gen, x, y, again) == loss);
}

TEST_CASE("reverse chain of a zero network has the recursively computed variance") {
  // With eps_hat == 0 each step is y <- y / sqrt(alpha') + sqrt(beta') z, with
  // the noise dropped on the final step, starting from N(0, 1).
  const ConditionalGenerator gen = zero_generator(1, 0.5, 2.0);
  const NoiseSchedule& s = gen.schedule;
  for (int stride : {1, 10}) {
    double var = 1.0;
    for (int t = 1000; t >= stride; t -= stride) {
      const double alpha = s.alpha_bar(t) / s.alpha_bar(t - stride);
      var = var / alpha + (t > stride ? 1.0 - alpha : 0.0);
    }
    const std::vector<double> y = draw(gen, 0.0, 20000, stride, 3);
    CHECK_MESSAGE(std::abs(mean_of(y) - 0.5) < 4.0 * 2.0 * std::sqrt(var / 20000.0), stride);
    CHECK_MESSAGE(sd_of(y) == doctest::Approx(2.0 * std::sqrt(var)).epsilon(0.03), stride);
  }
}

TEST_CASE("sampling contract") {
  const ConditionalGenerator gen = zero_generator(2, 0.0, 1.0);
  const std::vector<double> x{0.1, -0.2};
  const gdp::SyntheticSampleSet one = gdp::sample(gen, x, 1, {1, 42, 0});
  CHECK(one.size() == 1);
  CHECK(gdp::sample(gen, x, 1, {1, 42, 0}).values() == one.values());
  CHECK(gdp::sample(gen, x, 1, {1, 43, 0}).values() != one.values());
  // Chain j does not depend on how many chains are drawn.
  const Matrix five = gdp::sample(gen, x, 5, {1, 42, 0}).values();
  CHECK(five(0, 0) == one.values()(0, 0));
  CHECK_THROWS_AS(gdp::sample(gen, x, 0, {1, 42, 0}), std::invalid_argument);
  CHECK_THROWS_AS(gdp::sample(gen, x, 3, {7, 42, 0}), std::invalid_argument);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS(gdp::sample(gen, wrong, 3, {1, 42, 0}));
}

TEST_CASE("training rejects degenerate data") {
  gdp::Dataset empty{Matrix(0, 2), Matrix(0, 1)};
  CHECK_THROWS_AS(gdp::train(empty, toy_config()), std::invalid_argument);
  gdp::Dataset constant{Matrix::Random(50, 2), Matrix::Constant(50, 1, 3.0)};
  CHECK_THROWS_WITH_AS(gdp::train(constant, toy_config()), doctest::Contains("zero variance"),
                       std::invalid_argument);
}

TEST_CASE("training loss decreases and runs are reproducible") {
  gdp::Rng rng(21);
  gdp::Dataset data;
  data.x.resize(5000, 1);
  data.y.resize(5000, 1);
  std::normal_distribution<double> z;
  for (Eigen::Index i = 0; i < 5000; ++i) {
    data.x(i, 0) = z(rng);
    data.y(i, 0) = data.x(i, 0) + z(rng);
  }
  gdp::TrainConfig config;  // benchmark defaults
  config.max_epochs = 50;
  config.patience = 1000;
  const ConditionalGenerator gen = gdp::train(data, config);
  REQUIRE(gen.info.train_loss_history.size() == 50);
  CHECK(gen.info.train_loss_history[49] < gen.info.train_loss_history[0]);

  gdp::TrainConfig quick = config;
  quick.max_epochs = 3;
  const ConditionalGenerator a = gdp::train(data, quick);
  const ConditionalGenerator b = gdp::train(data, quick);
  CHECK(a.score_net.params() == b.score_net.params());
  CHECK(a.embedder.params() == b.embedder.params());
  CHECK(a.info.val_loss_history == b.info.val_loss_history);
}

TEST_CASE("trained toy generator recovers N(2x, 1)") {
  const ConditionalGenerator& gen = toy_generator();
  const std::vector<double> y = draw(gen, 1.0, 2000, 1, 5);
  CHECK(std::abs(mean_of(y) - 2.0) < 0.1);
  CHECK(std::abs(sd_of(y) - 1.0) < 0.1);

  gdp::Rng oracle_rng(77);
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const std::vector<double> gen_draws = draw(gen, x, 2000, 1, 11);
    const std::vector<double> oracle = normal_draws(2000, 2.0 * x, 1.0, oracle_rng);
    CHECK_MESSAGE(gdp::wasserstein1_1d(gen_draws, oracle) < 0.15, "x = " << x);
  }
}

TEST_CASE("stride 10 stays close to stride 1") {
  const ConditionalGenerator& gen = toy_generator();
  const double m1 = mean_of(draw(gen, 0.5, 2000, 1, 8));
  const double m10 = mean_of(draw(gen, 0.5, 2000, 10, 8));
  CHECK(std::abs(m1 - m10) < 0.1);
}
