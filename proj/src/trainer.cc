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

#include "trainer.h"

#include <cmath>
#include <stdexcept>

namespace gdp::internal {

Matrix time_embedding_table(int steps, int dim) {
  Matrix table(dim, steps + 1);
  for (int t = 0; t <= steps; ++t) table.col(t) = time_embed(t, steps, dim);
  return table;
}

Matrix assemble_input(const Matrix& payload, const Matrix& h, const Matrix& temb_table,
                      std::span<const int> steps) {
  const Eigen::Index cols = payload.cols();
  Matrix in(payload.rows() + h.rows() + temb_table.rows(), cols);
  in.topRows(payload.rows()) = payload;
  in.middleRows(payload.rows(), h.rows()) = h;
  for (Eigen::Index j = 0; j < cols; ++j) {
    in.col(j).tail(temb_table.rows()) = temb_table.col(steps[static_cast<std::size_t>(j)]);
  }
  return in;
}

Matrix gather_columns(const Matrix& m, std::span<const std::size_t> idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = m.col(static_cast<Eigen::Index>(idx[j]));
  }
  return out;
}

SplitIndices split_rows(std::size_t n, double val_fraction, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("training needs at least 2 rows, got " + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_rng(seed, {kSplitStream});
  std::shuffle(order.begin(), order.end(), rng);
  auto n_val = static_cast<std::size_t>(std::ceil(val_fraction * static_cast<double>(n)));
  n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  SplitIndices split;
  split.train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val));
  split.validation.assign(order.end() - static_cast<std::ptrdiff_t>(n_val), order.end());
  return split;
}

}  // namespace gdp::internal
