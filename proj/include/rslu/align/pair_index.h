// include/rslu/align/pair_index.h
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

#ifndef RSLU_ALIGN_PAIR_INDEX_H_
#define RSLU_ALIGN_PAIR_INDEX_H_

#include <cstdint>
#include <vector>

#include "rslu/align/alignment.h"

namespace rslu {

// Where one batch entry's tokens live in the flattened clean and noisy token
// matrices (CLS and PAD positions are not part of either).
struct TokenOffsets {
  std::int64_t clean_offset = 0;
  std::int64_t clean_length = 0;
  std::int64_t noisy_offset = 0;
  std::int64_t noisy_length = 0;
};

// Anchor/positive/negative index sets over flat rows. Anchor k pairs row
// anchors[k] of the anchor matrix with row positives[k] of the candidate
// matrix; negatives[k] lists candidate rows to contrast against.
struct PairIndex {
  std::vector<std::int64_t> anchors;
  std::vector<std::int64_t> positives;
  std::vector<std::vector<std::int64_t>> negatives;

  std::size_t size() const { return anchors.size(); }
};

// Passing kUncapped as n_neg_max keeps every negative.
inline constexpr std::int64_t kUncapped = -1;

// Positive set from Match/Substitute pairs of each alignment; every anchor's
// negatives are all flat noisy tokens of the batch except its partner,
// reservoir-sampled down to n_neg_max with a seed derived from batch_seed.
// Throws ContractError on overlapping offset ranges or alignment indices that
// fall outside their entry's token range.
PairIndex BatchPairIndex(const std::vector<Alignment>& alignments,
                         const std::vector<TokenOffsets>& offsets, std::int64_t n_neg_max,
                         std::uint64_t batch_seed);

// Every row is its own positive; negatives are all other rows (capped).
PairIndex SelfPairIndex(std::int64_t n_rows, std::int64_t n_neg_max, std::uint64_t batch_seed);

// Row i pairs with candidate row i; negatives are all other candidate rows.
PairIndex DiagonalPairIndex(std::int64_t n_rows);

// Algorithm R over `candidates` (kept in their original relative order).
std::vector<std::int64_t> ReservoirSample(const std::vector<std::int64_t>& candidates,
                                          std::int64_t cap, std::uint64_t seed);

}  // namespace rslu

#endif  // RSLU_ALIGN_PAIR_INDEX_H_
