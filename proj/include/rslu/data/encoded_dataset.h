// include/rslu/data/encoded_dataset.h
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

#ifndef RSLU_DATA_ENCODED_DATASET_H_
#define RSLU_DATA_ENCODED_DATASET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rslu/align/alignment.h"
#include "rslu/corpus/transcript.h"
#include "rslu/corpus/vocabulary.h"

namespace rslu {

enum class InputSide { kClean, kNoisy };

std::string_view InputSideName(InputSide side);
// Throws ConfigError for anything but "clean" / "noisy".
InputSide ParseInputSide(std::string_view name);

// Tokenized, id-encoded view of a list of pairs. Reads of the noisy side
// (sequence, alignment, WER) are counted so callers can prove a method never
// looked at noisy text.
class EncodedDataset {
 public:
  EncodedDataset() = default;

  // Throws ValidationError when an intent is missing from `labels`.
  static EncodedDataset Build(const std::vector<TranscriptPair>& pairs, const Vocabulary& vocab,
                              const IntentLabelSet& labels, std::int64_t max_len);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::int64_t label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::int64_t>& labels() const { return labels_; }

  const TokenSequence& Clean(std::size_t i) const;
  const TokenSequence& Noisy(std::size_t i) const;
  const TokenSequence& Input(std::size_t i, InputSide side) const;
  // Alignment of the (truncated) clean and noisy token lists.
  const Alignment& alignment(std::size_t i) const;
  // Per-pair WER of noisy against clean, or 0 when the clean side is empty.
  double PairWer(std::size_t i) const;

  std::int64_t clean_reads() const { return clean_reads_; }
  std::int64_t noisy_reads() const { return noisy_reads_; }
  void ResetAudit() const { clean_reads_ = noisy_reads_ = 0; }

 private:
  std::vector<std::string> ids_;
  std::vector<std::int64_t> labels_;
  std::vector<TokenSequence> clean_, noisy_;
  std::vector<Alignment> alignments_;
  std::vector<double> wers_;
  mutable std::int64_t clean_reads_ = 0;
  mutable std::int64_t noisy_reads_ = 0;
};

}  // namespace rslu

#endif  // RSLU_DATA_ENCODED_DATASET_H_
