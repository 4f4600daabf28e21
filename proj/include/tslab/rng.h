// Copyright 2026 The TSLab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSLAB_RNG_H_
#define TSLAB_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace tslab {

// Every lane (one simulation run, one Monte Carlo cell) owns one of these.
using Rng = std::mt19937_64;

// Derives an independent generator from a key path such as
// {master, cell, seed, stream}. The mapping is a pure function of the keys, so
// adding new cells or streams never changes the sequence seen by existing
// ones.
inline Rng MakeRng(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * keys.size());
  for (std::uint64_t k : keys) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

// Uniform double in [0, 1) using the top 53 bits of one draw.
inline double Uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tslab

#endif  // TSLAB_RNG_H_
