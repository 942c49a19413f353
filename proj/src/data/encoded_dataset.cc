// src/data/encoded_dataset.cc
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

#include "rslu/data/encoded_dataset.h"

#include "rslu/common/errors.h"
#include "rslu/corpus/tokenizer.h"

namespace rslu {

std::string_view InputSideName(InputSide side) {
  return side == InputSide::kClean ? "clean" : "noisy";
}

InputSide ParseInputSide(std::string_view name) {
  if (name == "clean") return InputSide::kClean;
  if (name == "noisy") return InputSide::kNoisy;
  throw ConfigError("input side must be clean or noisy, got '" + std::string(name) + "'");
}

EncodedDataset EncodedDataset::Build(const std::vector<TranscriptPair>& pairs,
                                     const Vocabulary& vocab, const IntentLabelSet& labels,
                                     std::int64_t max_len) {
  EncodedDataset ds;
  for (const TranscriptPair& p : pairs) {
    ds.ids_.push_back(p.id);
    ds.labels_.push_back(static_cast<std::int64_t>(labels.Index(p.intent)));
    ds.clean_.push_back(vocab.Encode(Tokenize(p.clean), max_len));
    ds.noisy_.push_back(vocab.Encode(Tokenize(p.noisy), max_len));
    const Alignment a = Align(ds.clean_.back().tokens, ds.noisy_.back().tokens);
    const std::int64_t n_ref = ds.clean_.back().true_length;
    ds.wers_.push_back(n_ref > 0 ? static_cast<double>(a.edit_distance) / n_ref : 0.0);
    ds.alignments_.push_back(a);
  }
  return ds;
}

const TokenSequence& EncodedDataset::Clean(std::size_t i) const {
  ++clean_reads_;
  return clean_.at(i);
}

const TokenSequence& EncodedDataset::Noisy(std::size_t i) const {
  ++noisy_reads_;
  return noisy_.at(i);
}

const TokenSequence& EncodedDataset::Input(std::size_t i, InputSide side) const {
  return side == InputSide::kClean ? Clean(i) : Noisy(i);
}

const Alignment& EncodedDataset::alignment(std::size_t i) const {
  ++noisy_reads_;
  return alignments_.at(i);
}

double EncodedDataset::PairWer(std::size_t i) const {
  ++noisy_reads_;
  return wers_.at(i);
}

}  // namespace rslu
