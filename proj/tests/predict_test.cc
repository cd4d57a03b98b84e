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

#include "gdp/predict.h"
#include "test_support.h"

namespace {

using gdp::LossKind;
using gdp::LossSpec;
using gdp::Matrix;
using gdp::Prediction;
using gdp::SyntheticSampleSet;
using gdp::Vector;

SyntheticSampleSet scalars(const std::vector<double>& v) {
  SyntheticSampleSet s;
  Matrix m(static_cast<Eigen::Index>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = v[i];
  s.payload = m;
  return s;
}

SyntheticSampleSet labels(std::vector<int> v) {
  SyntheticSampleSet s;
  s.payload = std::move(v);
  return s;
}

double scalar_value(const Prediction& p) { return std::get<Vector>(p.value)[0]; }

double brute_pinball(const std::vector<double>& samples, double alpha, double theta) {
  double total = 0.0;
  for (double y : samples) total += gdp::pinball_loss(y - theta, alpha);
  return total / static_cast<double>(samples.size());
}

}  // namespace

TEST_CASE("closed-form minimizers on small sets") {
  CHECK(scalar_value(gdp::gdp_point(scalars({1, 2, 3}), LossSpec::squared())) == 2.0);
  CHECK(scalar_value(gdp::gdp_point(scalars({1, 2, 3, 4, 5}), LossSpec::pinball(0.5))) == 3.0);
  CHECK(scalar_value(gdp::gdp_point(scalars({4, 1, 3, 2}), LossSpec::absolute())) == 2.5);
  CHECK(std::get<int>(gdp::gdp_point(labels({2, 2, 3, 1, 2}), LossSpec::zero_one()).value) == 2);
  CHECK(std::get<int>(gdp::gdp_point(labels({3, 1, 3, 1}), LossSpec::zero_one()).value) == 1);
}

TEST_CASE("pinball 0.2 on 1..5 agrees with a grid search") {
  const std::vector<double> ys{1, 2, 3, 4, 5};
  const Prediction p = gdp::gdp_point(scalars(ys), LossSpec::pinball(0.2));
  CHECK(scalar_value(p) == 1.0);
  double best = INFINITY;
  double argbest = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double theta = i * 0.01;
    const double loss = brute_pinball(ys, 0.2, theta);
    if (loss < best - 1e-15) {
      best = loss;
      argbest = theta;
    }
  }
  CHECK(p.loss_value == doctest::Approx(best).epsilon(1e-12));
  CHECK(argbest == doctest::Approx(1.0));
}

TEST_CASE("euclidean medoid matches exhaustive pairwise distances") {
  SyntheticSampleSet s;
  Matrix v(3, 2);
  v << 0, 0, 1, 0, 0.9, 0.1;
  s.payload = v;
  std::size_t expected = 0;
  double best = INFINITY;
  for (Eigen::Index a = 0; a < 3; ++a) {
    double total = 0.0;
    for (Eigen::Index b = 0; b < 3; ++b) total += (v.row(a) - v.row(b)).norm();
    if (total < best) {
      best = total;
      expected = static_cast<std::size_t>(a);
    }
  }
  const Prediction p = gdp::gdp_point(s, LossSpec::medoid());
  REQUIRE(p.sample_index.has_value());
  CHECK(*p.sample_index == expected);
  CHECK(std::get<Vector>(p.value) == v.row(static_cast<Eigen::Index>(expected)).transpose());
}

TEST_CASE("cosine medoid ignores scale") {
  SyntheticSampleSet s;
  Matrix v(4, 2);
  v << 1, 0, 10, 1, 0, 1, 2, 0.1;
  s.payload = v;
  const Prediction p = gdp::gdp_point(s, LossSpec::medoid(gdp::Dissimilarity::kCosine));
  const Vector chosen = std::get<Vector>(p.value);
  CHECK(p.loss_value == doctest::Approx(gdp::empirical_loss(s, LossSpec::medoid(gdp::Dissimilarity::kCosine), chosen)));
  CHECK(gdp::dissimilarity(Vector::Constant(2, 1.0), Vector::Constant(2, 5.0),
                           gdp::Dissimilarity::kCosine) == doctest::Approx(0.0));
}

TEST_CASE("reported loss equals the recomputed empirical loss") {
  gdp::Rng rng(3);
  std::normal_distribution<double> z;
  SyntheticSampleSet s;
  Matrix v(37, 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = z(rng);
  s.payload = v;
  for (const LossSpec& loss : {LossSpec::squared(), LossSpec::absolute(), LossSpec::pinball(0.3),
                               LossSpec::medoid(), LossSpec::medoid(gdp::Dissimilarity::kCosine)}) {
    const Prediction p = gdp::gdp_point(s, loss);
    CHECK_MESSAGE(std::abs(p.loss_value - gdp::empirical_loss(s, loss, p.value)) < 1e-12,
                  loss.to_string());
    CHECK(p.m_used == 37);
  }
}

TEST_CASE("minimizers beat every grid candidate on random sets") {
  gdp::Rng rng(2025);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_int_distribution<int> cell(-6, 6);
  std::uniform_real_distribution<double> level(0.01, 0.99);
  std::vector<double> grid;
  for (int i = -400; i <= 400; ++i) grid.push_back(i * 0.01);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = size(rng);
    std::vector<double> ys(static_cast<std::size_t>(m));
    for (double& y : ys) y = 0.5 * cell(rng);
    const SyntheticSampleSet s = scalars(ys);
    for (const LossSpec& loss : {LossSpec::squared(), LossSpec::absolute(),
                                 LossSpec::pinball(level(rng)), LossSpec::medoid()}) {
      const Prediction p = gdp::gdp_point(s, loss);
      // Medoids are restricted to the samples themselves.
      const std::vector<double>& candidates = loss.kind == LossKind::kMedoid ? ys : grid;
      double best = INFINITY;
      for (double c : candidates) {
        best = std::min(best, gdp::empirical_loss(s, loss, Vector::Constant(1, c)));
      }
      CHECK_MESSAGE(p.loss_value <= best + 1e-12, loss.to_string() << " trial " << trial);
    }
    std::vector<int> ls(static_cast<std::size_t>(m));
    for (int& l : ls) l = cell(rng) + 6;
    const SyntheticSampleSet cat = labels(ls);
    const Prediction p = gdp::gdp_point(cat, LossSpec::zero_one());
    for (int c = 0; c <= 12; ++c) {
      CHECK(p.loss_value <= gdp::empirical_loss(cat, LossSpec::zero_one(), c) + 1e-12);
    }
  }
}

TEST_CASE("pinball prediction lies in the minimizer interval") {
  gdp::Rng rng(7);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> level(0.01, 0.99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 23;
    std::vector<double> ys(m);
    for (double& y : ys) y = z(rng);
    const double alpha = level(rng);
    const double theta = scalar_value(gdp::gdp_point(scalars(ys), LossSpec::pinball(alpha)));
    std::sort(ys.begin(), ys.end());
    const double scaled = alpha * static_cast<double>(m);
    const auto lo = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(scaled)), 1, m);
    const auto hi = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(scaled)) + 1, 1, m);
    CHECK(theta >= ys[lo - 1]);
    CHECK(theta <= ys[hi - 1]);
  }
}

TEST_CASE("standard normal quantiles from a large sample set") {
  gdp::Rng rng(17);
  const SyntheticSampleSet s = scalars(gdp::testing::normal_draws(100000, 0.0, 1.0, rng));
  const std::vector<double> alphas{0.05, 0.5, 0.95};
  const std::vector<Prediction> q = gdp::gdp_quantiles(s, alphas);
  REQUIRE(q.size() == 3);
  CHECK(std::abs(scalar_value(q[0]) + 1.645) < 0.03);
  CHECK(std::abs(scalar_value(q[1])) < 0.03);
  CHECK(std::abs(scalar_value(q[2]) - 1.645) < 0.03);
}

TEST_CASE("quantile predictions are monotone and reduce to gdp_point") {
  gdp::Rng rng(19);
  const SyntheticSampleSet s = scalars(gdp::testing::normal_draws(101, 1.0, 2.0, rng));
  const std::vector<double> alphas{0.05, 0.2, 0.5, 0.8, 0.95};
  const std::vector<Prediction> q = gdp::gdp_quantiles(s, alphas);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(scalar_value(q[i - 1]) <= scalar_value(q[i]));
  const std::vector<double> one{0.3};
  CHECK(scalar_value(gdp::gdp_quantiles(s, one)[0]) ==
        scalar_value(gdp::gdp_point(s, LossSpec::pinball(0.3))));
}

TEST_CASE("predictions are permutation invariant") {
  gdp::Rng rng(23);
  std::normal_distribution<double> z;
  Matrix v(30, 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = std::round(z(rng) * 2.0) / 2.0;
  std::vector<Eigen::Index> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix shuffled(30, 2);
  for (Eigen::Index i = 0; i < 30; ++i) shuffled.row(i) = v.row(perm[static_cast<std::size_t>(i)]);
  SyntheticSampleSet a, b;
  a.payload = v;
  b.payload = shuffled;
  for (const LossSpec& loss : {LossSpec::squared(), LossSpec::absolute(), LossSpec::pinball(0.7),
                               LossSpec::medoid()}) {
    const Vector pa = std::get<Vector>(gdp::gdp_point(a, loss).value);
    const Vector pb = std::get<Vector>(gdp::gdp_point(b, loss).value);
    CHECK_MESSAGE((pa - pb).norm() < 1e-12, loss.to_string());
  }
  std::vector<int> ls{4, 1, 4, 1, 2, 2, 0};
  const int mode = std::get<int>(gdp::gdp_point(labels(ls), LossSpec::zero_one()).value);
  std::shuffle(ls.begin(), ls.end(), rng);
  CHECK(std::get<int>(gdp::gdp_point(labels(ls), LossSpec::zero_one()).value) == mode);
}

TEST_CASE("sample-set domain restricts continuous losses to the samples") {
  LossSpec loss = LossSpec::squared();
  loss.domain = gdp::MinimizerDomain::kSampleSet;
  const Prediction p = gdp::gdp_point(scalars({0.0, 0.9, 3.0}), loss);
  CHECK(scalar_value(p) == 0.9);
  CHECK(p.sample_index == 1u);
}

TEST_CASE("loss parsing and validation") {
  CHECK(LossSpec::parse("squared").kind == LossKind::kSquared);
  CHECK(LossSpec::parse("absolute").kind == LossKind::kAbsolute);
  CHECK(LossSpec::parse("pinball:0.05").alpha == 0.05);
  CHECK(LossSpec::parse("zero_one").domain == gdp::MinimizerDomain::kSampleSet);
  CHECK(LossSpec::parse("medoid:cosine").dissimilarity == gdp::Dissimilarity::kCosine);
  CHECK(LossSpec::parse("pinball:0.2").to_string() == "pinball:0.2");
  CHECK_THROWS_WITH_AS(LossSpec::parse("pinball:1.5"), doctest::Contains("0 < alpha < 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::parse("pinball:0"), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::parse("pinball"), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::parse("hinge"), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::parse("medoid:manhattan"), std::invalid_argument);
  LossSpec bad = LossSpec::medoid();
  bad.domain = gdp::MinimizerDomain::kContinuous;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("incompatible payloads and empty sets are rejected") {
  CHECK_THROWS_AS(gdp::gdp_point(scalars({}), LossSpec::squared()), std::invalid_argument);
  CHECK_THROWS_AS(gdp::gdp_point(scalars({1.0}), LossSpec::zero_one()), std::invalid_argument);
  CHECK_THROWS_AS(gdp::gdp_point(labels({1, 2}), LossSpec::squared()), std::invalid_argument);
  CHECK_THROWS_AS(gdp::gdp_point(labels({}), LossSpec::zero_one()), std::invalid_argument);
}
