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

#include "gdp/simbench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <boost/math/distributions/normal.hpp>

#include "gdp/diffusion.h"
#include "gdp/predict.h"

namespace gdp {
namespace {

enum : std::uint64_t {
  kDataStream = 11,
  kSamplingStream = 12,
  kSourceStream = 13,
  kTargetStream = 14,
};

}  // namespace

std::string to_string(SimCase c) { return c == SimCase::kI ? "I" : "II"; }

SimCase sim_case_from_string(const std::string& text) {
  if (text == "I" || text == "1") return SimCase::kI;
  if (text == "II" || text == "2") return SimCase::kII;
  throw std::invalid_argument("unknown simulation case '" + text + "' (expected I or II)");
}

void SimConfig::set_full_fidelity() {
  test_subset = 0;
  stride = 1;
}

void SimConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid simulation config: " + what);
  };
  require(n >= 10, "n must be >= 10");
  require(p >= 2, "p must be >= 2 (the model uses X_1 and X_2)");
  require(std::abs(rho) < 1.0, "|rho| must be < 1");
  require(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction must lie in (0, 1)");
  require(m >= 1, "m must be >= 1");
  require(stride >= 1, "stride must be >= 1");
  require(!alphas.empty(), "alphas must be nonempty");
  for (double a : alphas) require(a > 0.0 && a < 1.0, "every alpha must lie in (0, 1)");
}

Dataset SimDataset::as_dataset() const { return {x, Matrix(y)}; }

Matrix predictor_cholesky(int p, SimCase sim_case, double rho) {
  if (sim_case == SimCase::kI) return Matrix::Identity(p, p);
  Matrix sigma(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) sigma(i, j) = std::pow(rho, std::abs(i - j));
  }
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw std::runtime_error("covariance is not positive definite");
  return llt.matrixL();
}

double conditional_location(std::span<const double> x, const Vector& beta) {
  if (static_cast<Eigen::Index>(x.size()) != beta.size() || x.size() < 2) {
    throw std::invalid_argument("conditional_location: x must have p >= 2 entries matching beta");
  }
  const double xb = Eigen::Map<const Vector>(x.data(), beta.size()).dot(beta);
  return std::sin(xb) + std::log1p(std::abs(x[0]));
}

double conditional_scale(std::span<const double> x) {
  const double a = std::abs(x[1]);
  return (1.0 + a) * std::sqrt(a);
}

double draw_response(std::span<const double> x, const Vector& beta, Rng& rng) {
  std::normal_distribution<double> normal;
  const double eps = std::sqrt(std::abs(x[1])) * normal(rng);
  return conditional_location(x, beta) + eps * (1.0 + std::abs(x[1]));
}

SimDataset simulate_with_beta(const Vector& beta, std::size_t n, SimCase sim_case, double rho,
                              double x_shift, Rng& rng) {
  const int p = static_cast<int>(beta.size());
  const Matrix chol = predictor_cholesky(p, sim_case, rho);
  std::normal_distribution<double> normal;
  SimDataset data;
  data.beta = beta;
  data.sim_case = sim_case;
  data.rho = sim_case == SimCase::kII ? rho : 0.0;
  data.x.resize(static_cast<Eigen::Index>(n), p);
  data.y.resize(static_cast<Eigen::Index>(n));
  Vector z(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z[j] = normal(rng);
    const Vector row = (sim_case == SimCase::kI ? z : Vector(chol * z)).array() + x_shift;
    data.x.row(static_cast<Eigen::Index>(i)) = row.transpose();
    data.y[static_cast<Eigen::Index>(i)] =
        draw_response(std::span<const double>(row.data(), row.size()), beta, rng);
  }
  return data;
}

SimDataset simulate(const SimConfig& config, Rng& rng) {
  config.validate();
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Vector beta(config.p);
  for (int j = 0; j < config.p; ++j) beta[j] = coef(rng);
  return simulate_with_beta(beta, config.n, config.sim_case, config.rho, 0.0, rng);
}

double standard_normal_quantile(double alpha) {
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), alpha);
}

Matrix oracle_quantiles(const Matrix& x, const Vector& beta, std::span<const double> alphas) {
  Matrix q(x.rows(), static_cast<Eigen::Index>(alphas.size()));
  std::vector<double> z(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a) z[a] = standard_normal_quantile(alphas[a]);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector row = x.row(i).transpose();
    const std::span<const double> xs(row.data(), row.size());
    const double loc = conditional_location(xs, beta);
    const double scale = conditional_scale(xs);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      q(i, static_cast<Eigen::Index>(a)) = loc + scale * z[a];
    }
  }
  return q;
}

Matrix oracle_quantiles_mc(const Matrix& x, const Vector& beta, std::span<const double> alphas,
                           int draws, Rng& rng) {
  if (draws < 1) throw std::invalid_argument("oracle_quantiles_mc: draws must be >= 1");
  Matrix q(x.rows(), static_cast<Eigen::Index>(alphas.size()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector row = x.row(i).transpose();
    SyntheticSampleSet samples;
    Matrix ys(draws, 1);
    for (int k = 0; k < draws; ++k) {
      ys(k, 0) = draw_response(std::span<const double>(row.data(), row.size()), beta, rng);
    }
    samples.payload = std::move(ys);
    const std::vector<Prediction> preds = gdp_quantiles(samples, alphas);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      q(i, static_cast<Eigen::Index>(a)) = std::get<Vector>(preds[a].value)[0];
    }
  }
  return q;
}

BenchmarkResult run_benchmark(const SimConfig& sim, const TrainConfig& train_config) {
  sim.validate();
  Rng data_rng = make_rng(sim.seed, {kDataStream});
  const SimDataset data = simulate(sim, data_rng);
  const auto n_train = static_cast<Eigen::Index>(
      std::llround(sim.train_fraction * static_cast<double>(sim.n)));
  const Eigen::Index n_test = static_cast<Eigen::Index>(sim.n) - n_train;
  if (n_train < 2 || n_test < 1) throw std::invalid_argument("split leaves an empty side");

  TrainConfig tc = train_config;
  tc.seed = sim.seed;
  BenchmarkResult result;
  result.n_train = static_cast<std::size_t>(n_train);

  const auto t0 = std::chrono::steady_clock::now();
  const ConditionalGenerator gen =
      train(Dataset{data.x.topRows(n_train), Matrix(data.y.head(n_train))}, tc);
  const auto t1 = std::chrono::steady_clock::now();
  result.training = gen.info;

  const Eigen::Index n_eval =
      sim.test_subset == 0 ? n_test
                           : std::min<Eigen::Index>(n_test, static_cast<Eigen::Index>(sim.test_subset));
  const Matrix x_eval = data.x.middleRows(n_train, n_eval);
  const Eigen::Index n_alpha = static_cast<Eigen::Index>(sim.alphas.size());
  Matrix predicted(n_eval, n_alpha);
  const std::uint64_t sampling_seed = derive_seed(sim.seed, {kSamplingStream});
  parallel_for(
      static_cast<std::size_t>(n_eval),
      [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        const Vector x = x_eval.row(row).transpose();
        const SyntheticSampleSet samples =
            sample(gen, std::span<const double>(x.data(), x.size()), sim.m,
                   SamplingOptions{sim.stride, sampling_seed, i});
        const std::vector<Prediction> preds = gdp_quantiles(samples, sim.alphas);
        for (Eigen::Index a = 0; a < n_alpha; ++a) {
          predicted(row, a) = std::get<Vector>(preds[static_cast<std::size_t>(a)].value)[0];
        }
      },
      sim.threads);
  const auto t2 = std::chrono::steady_clock::now();

  const Matrix truth = oracle_quantiles(x_eval, data.beta, sim.alphas);
  result.rmse.metric = "RMSE";
  result.mad.metric = "MAD";
  result.rmse.sample_count = result.mad.sample_count = static_cast<std::size_t>(n_eval);
  for (Eigen::Index a = 0; a < n_alpha; ++a) {
    const Vector p = predicted.col(a);
    const Vector t = truth.col(a);
    const std::span<const double> ps(p.data(), p.size());
    const std::span<const double> ts(t.data(), t.size());
    result.rmse.by_alpha[sim.alphas[static_cast<std::size_t>(a)]] = rmse(ps, ts);
    result.mad.by_alpha[sim.alphas[static_cast<std::size_t>(a)]] = mad(ps, ts);
  }
  result.n_test_evaluated = static_cast<std::size_t>(n_eval);
  result.train_seconds = std::chrono::duration<double>(t1 - t0).count();
  result.sample_seconds = std::chrono::duration<double>(t2 - t1).count();
  return result;
}

std::string report_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "metric";
  for (const auto& [alpha, value] : result.rmse.by_alpha) out << ',' << alpha;
  out << ",Average\n";
  out << std::setprecision(10);
  for (const MetricReport* report : {&result.rmse, &result.mad}) {
    out << report->metric;
    for (const auto& [alpha, value] : report->by_alpha) out << ',' << value;
    out << ',' << report->average() << '\n';
  }
  return out.str();
}

std::string report_table(const BenchmarkResult& result, const std::string& title) {
  std::ostringstream out;
  out << std::left << std::setw(10) << title;
  for (const auto& [alpha, value] : result.rmse.by_alpha) {
    std::ostringstream label;
    label << alpha * 100.0 << '%';
    out << std::right << std::setw(9) << label.str();
  }
  out << std::right << std::setw(9) << "Average" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const MetricReport* report : {&result.rmse, &result.mad}) {
    out << std::left << std::setw(10) << report->metric << std::right;
    for (const auto& [alpha, value] : report->by_alpha) out << std::setw(9) << value;
    out << std::setw(9) << report->average() << '\n';
  }
  return out.str();
}

TransferPair make_transfer_pair(std::uint64_t seed, const TransferPairConfig& config) {
  if (config.p < 2) throw std::invalid_argument("make_transfer_pair: p must be >= 2");
  Rng beta_rng = make_rng(seed, {kDataStream});
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Vector beta(config.p);
  for (int j = 0; j < config.p; ++j) beta[j] = coef(beta_rng);
  Rng source_rng = make_rng(seed, {kSourceStream});
  Rng target_rng = make_rng(seed, {kTargetStream});
  TransferPair pair;
  pair.source = simulate_with_beta(beta, config.n_source, SimCase::kI, 0.0, 0.0, source_rng);
  pair.target =
      simulate_with_beta(beta, config.n_target, SimCase::kI, 0.0, config.x_shift, target_rng);
  return pair;
}

Dataset make_linear_gaussian_toy(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  Dataset data{Matrix(static_cast<Eigen::Index>(n), 1), Matrix(static_cast<Eigen::Index>(n), 1)};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    data.x(i, 0) = normal(rng);
    data.y(i, 0) = 2.0 * data.x(i, 0) + normal(rng);
  }
  return data;
}

Vector categorical_toy_probabilities(double x) {
  Vector p(3);
  if (x < 0.5) {
    p << 0.2, 0.3, 0.5;
  } else {
    p << 0.5, 0.3, 0.2;
  }
  return p;
}

CategoricalDataset make_categorical_toy(std::size_t n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CategoricalDataset data{Matrix(static_cast<Eigen::Index>(n), 1), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = coin(rng) ? 1.0 : 0.0;
    data.x(static_cast<Eigen::Index>(i), 0) = x;
    const Vector p = categorical_toy_probabilities(x);
    const double r = u(rng);
    data.labels[i] = r < p[0] ? 0 : (r < p[0] + p[1] ? 1 : 2);
  }
  return data;
}

}  // namespace gdp
