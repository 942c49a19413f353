// include/rslu/corpus/vocabulary.h
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

#ifndef RSLU_CORPUS_VOCABULARY_H_
#define RSLU_CORPUS_VOCABULARY_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rslu/corpus/transcript.h"

namespace rslu {

inline constexpr std::int64_t kPadId = 0;
inline constexpr std::int64_t kClsId = 1;
inline constexpr std::int64_t kUnkId = 2;
inline constexpr std::int64_t kNumReserved = 3;

// Encoded utterance. ids[0] is CLS, ids[1..true_length] the tokens, the rest
// PAD up to max_len. `tokens` holds the (possibly truncated) token strings.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<std::int64_t> ids;
  std::int64_t true_length = 0;
};

class Vocabulary {
 public:
  Vocabulary();

  // Counts clean and noisy tokens of the train split only. Tokens seen fewer
  // than min_freq times are left out (they encode as UNK). Ids are assigned by
  // descending frequency, then lexicographically. Throws ContractError when
  // the train split is empty.
  static Vocabulary Build(const std::vector<TranscriptPair>& corpus, int min_freq);

  // Restores a vocabulary from its word list (ids kNumReserved onward).
  static Vocabulary FromWords(const std::vector<std::string>& words, int min_freq);

  std::int64_t size() const { return static_cast<std::int64_t>(id_to_token_.size()); }
  int min_freq() const { return min_freq_; }
  std::int64_t Id(const std::string& token) const;
  const std::string& Token(std::int64_t id) const;
  bool Contains(const std::string& token) const { return token_to_id_.count(token) > 0; }
  // Non-reserved entries in id order.
  std::vector<std::string> Words() const;

  // Truncates to max_len - 1 tokens (with a warning), prepends CLS, pads.
  TokenSequence Encode(const std::vector<std::string>& tokens, std::int64_t max_len) const;
  // Token strings for ids[1..true_length], UNK ids rendered as "<unk>".
  std::vector<std::string> Decode(const TokenSequence& seq) const;

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, std::int64_t> token_to_id_;
  int min_freq_ = 1;
};

}  // namespace rslu

#endif  // RSLU_CORPUS_VOCABULARY_H_
