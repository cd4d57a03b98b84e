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

#include "conditioned_net.h"

#include <stdexcept>

namespace gdp::internal {

ConditionedNet::ConditionedNet(const Mlp& net, int payload_dim, const Vector& h,
                               const Matrix& temb_table)
    : net_(net), payload_dim_(payload_dim) {
  const auto w = net.weight(0);
  const Eigen::Index hd = h.size();
  const Eigen::Index td = temb_table.rows();
  if (w.cols() != payload_dim + hd + td) {
    throw std::invalid_argument("ConditionedNet: input layout does not match the network");
  }
  Vector fixed = w.middleCols(payload_dim, hd) * h + net.bias(0);
  step_bias_ = w.rightCols(td) * temb_table;
  step_bias_.colwise() += fixed;
}

Matrix ConditionedNet::forward(const Matrix& payload, int t) const {
  Matrix z = net_.weight(0).leftCols(payload_dim_) * payload;
  z.colwise() += step_bias_.col(t);
  return finish(std::move(z));
}

Matrix ConditionedNet::forward_labels(std::span<const int> labels, int t) const {
  const auto w = net_.weight(0);
  Matrix z(w.rows(), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    z.col(static_cast<Eigen::Index>(j)) = w.col(labels[j]) + step_bias_.col(t);
  }
  return finish(std::move(z));
}

Matrix ConditionedNet::finish(Matrix z) const {
  for (std::size_t l = 1; l < net_.num_layers(); ++l) {
    Matrix next = net_.weight(l) * z.cwiseMax(0.0);
    next.colwise() += net_.bias(l);
    z = std::move(next);
  }
  return z;
}

}  // namespace gdp::internal
