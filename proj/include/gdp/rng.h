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

#ifndef GDP_RNG_H_
#define GDP_RNG_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace gdp {

using Rng = std::mt19937_64;

// Deterministically mixes a base seed with stream identifiers, e.g.
// (seed, condition index, chain index), into an independent engine seed.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream);

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> stream) {
  return Rng(derive_seed(base, stream));
}

// Runs body(i) for i in [0, count) on up to `threads` worker threads
// (0 = hardware concurrency). Work is split into contiguous blocks, so the
// result is independent of the thread count as long as body(i) only touches
// slot i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace gdp

#endif  // GDP_RNG_H_
