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

#include "gdp/generator.h"

#include <cmath>
#include <string>

namespace gdp {

void TrainConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid training config: " + what);
  };
  require(batch_size >= 1, "batch_size must be >= 1");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(ema_decay >= 0.0 && ema_decay < 1.0, "ema_decay must lie in [0, 1)");
  require(max_epochs >= 0, "max_epochs must be >= 0");
  require(patience >= 1, "patience must be >= 1");
  require(width >= 1, "width must be >= 1");
  require(depth >= 1, "depth must be >= 1");
  require(embed_dim >= 1, "embed_dim must be >= 1");
  require(time_dim >= 2 && time_dim % 2 == 0, "time_dim must be a positive even integer");
  require(timesteps >= 1, "timesteps must be >= 1");
  require(beta_min > 0.0 && beta_max < 1.0 && beta_min <= beta_max,
          "need 0 < beta_min <= beta_max < 1");
  require(val_fraction > 0.0 && val_fraction < 1.0, "val_fraction must lie in (0, 1)");
}

std::string to_string(Role role) {
  switch (role) {
    case Role::kStandalone: return "standalone";
    case Role::kSource: return "source";
    case Role::kFinetuned: return "finetuned";
  }
  return "standalone";
}

Role role_from_string(const std::string& text) {
  if (text == "standalone") return Role::kStandalone;
  if (text == "source") return Role::kSource;
  if (text == "finetuned") return Role::kFinetuned;
  throw std::invalid_argument("unknown generator role '" + text + "'");
}

Standardizer Standardizer::fit(const Matrix& rows, bool reject_constant, const char* what) {
  if (rows.rows() == 0) throw std::invalid_argument(std::string("cannot standardize empty ") + what);
  Standardizer s;
  s.mean = rows.colwise().mean().transpose();
  s.scale.resize(rows.cols());
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    const double var = (rows.col(j).array() - s.mean[j]).square().mean();
    const double sd = std::sqrt(var);
    if (!(sd > 1e-12 * std::max(1.0, std::abs(s.mean[j])))) {
      if (reject_constant) {
        throw std::invalid_argument(std::string(what) + " column " + std::to_string(j) +
                                    " has zero variance");
      }
      s.scale[j] = 1.0;
    } else {
      s.scale[j] = sd;
    }
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& rows) const {
  if (rows.cols() != dim()) throw std::invalid_argument("Standardizer: column count mismatch");
  return (rows.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

Vector Standardizer::apply(std::span<const double> row) const {
  if (static_cast<Eigen::Index>(row.size()) != dim()) {
    throw std::invalid_argument("Standardizer: expected " + std::to_string(dim()) +
                                " values, got " + std::to_string(row.size()));
  }
  Eigen::Map<const Vector> v(row.data(), dim());
  return (v - mean).cwiseQuotient(scale);
}

Matrix Standardizer::invert(const Matrix& rows) const {
  if (rows.cols() != dim()) throw std::invalid_argument("Standardizer: column count mismatch");
  return (rows.array().rowwise() * scale.transpose().array()).rowwise() + mean.transpose().array();
}

std::size_t SyntheticSampleSet::size() const {
  if (categorical()) return labels().size();
  return static_cast<std::size_t>(values().rows());
}

}  // namespace gdp
