// include/rslu/noise/wer.h
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

#ifndef RSLU_NOISE_WER_H_
#define RSLU_NOISE_WER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rslu/corpus/transcript.h"

namespace rslu {

struct WerResult {
  double wer = 0.0;
  std::int64_t n_sub = 0;
  std::int64_t n_ins = 0;
  std::int64_t n_del = 0;
  std::int64_t n_ref = 0;

  std::int64_t edits() const { return n_sub + n_ins + n_del; }
};

// (S + I + D) / |reference| from the minimum-edit alignment. Throws
// ContractError for an empty reference.
WerResult WordErrorRate(const std::vector<std::string>& reference,
                        const std::vector<std::string>& hypothesis);

struct PairWer {
  std::string id;
  std::string clean;
  std::string noisy;
  WerResult result;
  // Human-readable error list, e.g. "up -> off", "+the", "-a".
  std::vector<std::string> errors;
};

// Corpus-level WER is total edits over total reference tokens; the mean of
// per-pair WERs is reported separately.
struct WerReport {
  std::vector<PairWer> pairs;
  std::int64_t total_sub = 0;
  std::int64_t total_ins = 0;
  std::int64_t total_del = 0;
  std::int64_t total_ref = 0;
  double corpus_wer = 0.0;
  double mean_pair_wer = 0.0;
  // Pairs whose WER exceeds 1 (only possible through insertions).
  std::vector<std::string> over_one;

  std::int64_t total_edits() const { return total_sub + total_ins + total_del; }
  // Indices of the k highest-WER pairs, ties by input order.
  std::vector<std::size_t> WorstK(std::size_t k) const;
  std::string ToJson(std::size_t worst_k = 10) const;
  std::string ToTable(std::size_t worst_k = 10) const;
  std::string WorstKJsonl(std::size_t k) const;
};

// Tokenizes clean (reference) and noisy (hypothesis) of every pair.
WerReport CorpusWerReport(const std::vector<TranscriptPair>& pairs);

}  // namespace rslu

#endif  // RSLU_NOISE_WER_H_
