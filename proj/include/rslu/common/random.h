// include/rslu/common/random.h
//
// Copyright 2026  The rslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RSLU_COMMON_RANDOM_H_
#define RSLU_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rslu {

// All randomness goes through mt19937_64, whose output sequence is fixed by
// the standard. The helpers below avoid the library distributions, whose
// algorithms are implementation-defined, so streams replay across toolchains.
using Rng = std::mt19937_64;

std::uint64_t SplitMix64(std::uint64_t x);

// Order-sensitive combination of seeds into a new well-mixed seed.
std::uint64_t MixSeeds(std::uint64_t a, std::uint64_t b);
std::uint64_t MixSeeds(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// FNV-1a over the bytes of `s`; stable across platforms and runs.
std::uint64_t StableHash(std::string_view s);

// Uniform in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

// Uniform in [lo, hi).
double UniformRange(Rng& rng, double lo, double hi);

// Fisher-Yates shuffle driven by UniformIndex.
template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = UniformIndex(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace rslu

#endif  // RSLU_COMMON_RANDOM_H_
