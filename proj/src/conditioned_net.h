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

#ifndef GDP_SRC_CONDITIONED_NET_H_
#define GDP_SRC_CONDITIONED_NET_H_

#include <span>

#include "gdp/nn.h"

namespace gdp::internal {

// Sampling-time view of a network whose input is [payload; h; temb(t)] with
// h fixed for the whole trajectory. The first layer is split so that the
// h and time-embedding contributions are computed once per step instead of
// once per chain.
class ConditionedNet {
 public:
  ConditionedNet(const Mlp& net, int payload_dim, const Vector& h, const Matrix& temb_table);

  // `payload` is payload_dim x chains.
  Matrix forward(const Matrix& payload, int t) const;
  // Payload given as one-hot labels.
  Matrix forward_labels(std::span<const int> labels, int t) const;

 private:
  Matrix finish(Matrix first_preact) const;

  const Mlp& net_;
  int payload_dim_;
  Matrix step_bias_;  // first-layer contribution of (h, temb(t)) + bias, one column per t
};

}  // namespace gdp::internal

#endif  // GDP_SRC_CONDITIONED_NET_H_
