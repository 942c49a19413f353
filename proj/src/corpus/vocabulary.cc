// src/corpus/vocabulary.cc
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

#include "rslu/corpus/vocabulary.h"

#include <algorithm>
#include <map>

#include "rslu/common/errors.h"
#include "rslu/corpus/tokenizer.h"

namespace rslu {

namespace {
const char* kReserved[] = {"<pad>", "<cls>", "<unk>"};
}  // namespace

Vocabulary::Vocabulary() {
  for (std::int64_t i = 0; i < kNumReserved; ++i) {
    id_to_token_.push_back(kReserved[i]);
    token_to_id_[kReserved[i]] = i;
  }
}

Vocabulary Vocabulary::Build(const std::vector<TranscriptPair>& corpus, int min_freq) {
  std::map<std::string, std::int64_t> counts;
  std::size_t n_train = 0;
  for (const TranscriptPair& p : corpus) {
    if (p.split != Split::kTrain) continue;
    ++n_train;
    for (const std::string& t : Tokenize(p.clean)) ++counts[t];
    for (const std::string& t : Tokenize(p.noisy)) ++counts[t];
  }
  if (n_train == 0) throw ContractError("cannot build a vocabulary: train split is empty");

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [token, n] : counts) {
    if (n >= min_freq && token != kReserved[0] && token != kReserved[1] &&
        token != kReserved[2]) {
      kept.emplace_back(token, n);
    }
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> words;
  words.reserve(kept.size());
  for (auto& [token, n] : kept) words.push_back(token);
  return FromWords(words, min_freq);
}

Vocabulary Vocabulary::FromWords(const std::vector<std::string>& words, int min_freq) {
  Vocabulary v;
  v.min_freq_ = min_freq;
  for (const std::string& w : words) {
    if (v.token_to_id_.count(w)) throw ValidationError("duplicate vocabulary entry '" + w + "'");
    v.token_to_id_[w] = static_cast<std::int64_t>(v.id_to_token_.size());
    v.id_to_token_.push_back(w);
  }
  return v;
}

std::int64_t Vocabulary::Id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  if (it == token_to_id_.end() || it->second < kNumReserved) return kUnkId;
  return it->second;
}

const std::string& Vocabulary::Token(std::int64_t id) const {
  if (id < 0 || id >= size()) throw ContractError("token id " + std::to_string(id) + " out of range");
  return id_to_token_[static_cast<std::size_t>(id)];
}

std::vector<std::string> Vocabulary::Words() const {
  return {id_to_token_.begin() + kNumReserved, id_to_token_.end()};
}

TokenSequence Vocabulary::Encode(const std::vector<std::string>& tokens,
                                 std::int64_t max_len) const {
  if (max_len < 2) throw ConfigError("max_len must be at least 2");
  TokenSequence seq;
  seq.tokens = tokens;
  if (static_cast<std::int64_t>(seq.tokens.size()) > max_len - 1) {
    Warn("truncating utterance of " + std::to_string(seq.tokens.size()) + " tokens to " +
         std::to_string(max_len - 1) + ": '" + JoinTokens(tokens) + "'");
    seq.tokens.resize(static_cast<std::size_t>(max_len - 1));
  }
  seq.true_length = static_cast<std::int64_t>(seq.tokens.size());
  seq.ids.assign(static_cast<std::size_t>(max_len), kPadId);
  seq.ids[0] = kClsId;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) seq.ids[i + 1] = Id(seq.tokens[i]);
  return seq;
}

std::vector<std::string> Vocabulary::Decode(const TokenSequence& seq) const {
  std::vector<std::string> out;
  for (std::int64_t i = 1; i <= seq.true_length; ++i) out.push_back(Token(seq.ids[i]));
  return out;
}

}  // namespace rslu
