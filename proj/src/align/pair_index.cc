// src/align/pair_index.cc
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

#include "rslu/align/pair_index.h"

#include <algorithm>
#include <string>

#include "rslu/common/errors.h"
#include "rslu/common/random.h"

namespace rslu {

namespace {

void CheckDisjoint(std::vector<std::pair<std::int64_t, std::int64_t>> ranges, const char* side) {
  std::sort(ranges.begin(), ranges.end());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].first < 0 || ranges[i].second < 0) {
      throw ContractError(std::string("negative ") + side + " offset or length");
    }
    if (i > 0 && ranges[i - 1].first + ranges[i - 1].second > ranges[i].first &&
        ranges[i].second > 0 && ranges[i - 1].second > 0) {
      throw ContractError(std::string(side) + " token offsets collide at flat index " +
                          std::to_string(ranges[i].first));
    }
  }
}

std::vector<std::int64_t> NegativesExcluding(std::int64_t total, std::int64_t excluded,
                                             std::int64_t cap, std::uint64_t seed) {
  std::vector<std::int64_t> all;
  all.reserve(static_cast<std::size_t>(std::max<std::int64_t>(total - 1, 0)));
  for (std::int64_t j = 0; j < total; ++j) {
    if (j != excluded) all.push_back(j);
  }
  return ReservoirSample(all, cap, seed);
}

}  // namespace

std::vector<std::int64_t> ReservoirSample(const std::vector<std::int64_t>& candidates,
                                          std::int64_t cap, std::uint64_t seed) {
  if (cap < 0 || static_cast<std::int64_t>(candidates.size()) <= cap) return candidates;
  Rng rng(seed);
  std::vector<std::size_t> slots(static_cast<std::size_t>(cap));
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  for (std::size_t i = slots.size(); i < candidates.size(); ++i) {
    const std::uint64_t r = UniformIndex(rng, i + 1);
    if (r < slots.size()) slots[r] = i;
  }
  std::sort(slots.begin(), slots.end());
  std::vector<std::int64_t> out;
  out.reserve(slots.size());
  for (std::size_t s : slots) out.push_back(candidates[s]);
  return out;
}

PairIndex BatchPairIndex(const std::vector<Alignment>& alignments,
                         const std::vector<TokenOffsets>& offsets, std::int64_t n_neg_max,
                         std::uint64_t batch_seed) {
  if (alignments.size() != offsets.size()) {
    throw ContractError("one offset entry is needed per alignment");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> clean_ranges, noisy_ranges;
  std::int64_t total_noisy = 0;
  for (const TokenOffsets& o : offsets) {
    clean_ranges.emplace_back(o.clean_offset, o.clean_length);
    noisy_ranges.emplace_back(o.noisy_offset, o.noisy_length);
    total_noisy = std::max(total_noisy, o.noisy_offset + o.noisy_length);
  }
  CheckDisjoint(clean_ranges, "clean");
  CheckDisjoint(noisy_ranges, "noisy");

  PairIndex index;
  for (std::size_t b = 0; b < alignments.size(); ++b) {
    const TokenOffsets& o = offsets[b];
    for (const auto& [c, h] : alignments[b].positive_pairs) {
      if (c < 0 || c >= o.clean_length || h < 0 || h >= o.noisy_length) {
        throw ContractError("alignment index outside batch entry " + std::to_string(b));
      }
      index.anchors.push_back(o.clean_offset + c);
      index.positives.push_back(o.noisy_offset + h);
    }
  }
  for (std::size_t k = 0; k < index.anchors.size(); ++k) {
    index.negatives.push_back(NegativesExcluding(total_noisy, index.positives[k], n_neg_max,
                                                 MixSeeds(batch_seed, index.anchors[k])));
  }
  return index;
}

PairIndex SelfPairIndex(std::int64_t n_rows, std::int64_t n_neg_max, std::uint64_t batch_seed) {
  PairIndex index;
  for (std::int64_t i = 0; i < n_rows; ++i) {
    index.anchors.push_back(i);
    index.positives.push_back(i);
    index.negatives.push_back(NegativesExcluding(n_rows, i, n_neg_max, MixSeeds(batch_seed, i)));
  }
  return index;
}

PairIndex DiagonalPairIndex(std::int64_t n_rows) {
  return SelfPairIndex(n_rows, kUncapped, 0);
}

}  // namespace rslu
