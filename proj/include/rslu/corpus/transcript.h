// include/rslu/corpus/transcript.h
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

#ifndef RSLU_CORPUS_TRANSCRIPT_H_
#define RSLU_CORPUS_TRANSCRIPT_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rslu {

enum class Split { kTrain, kValid, kTest };

std::string_view SplitName(Split split);
// Throws ValidationError for anything but "train", "valid", "test".
Split ParseSplit(std::string_view name);

// A clean transcript, its noisy (ASR-like) counterpart and the intent label.
struct TranscriptPair {
  std::string id;
  std::string clean;
  std::string noisy;
  std::string intent;
  Split split = Split::kTrain;

  bool operator==(const TranscriptPair&) const = default;
};

std::vector<TranscriptPair> FilterSplit(const std::vector<TranscriptPair>& pairs,
                                        Split split);

// Dense 0..K-1 indexing of intent names, ordered lexicographically.
class IntentLabelSet {
 public:
  IntentLabelSet() = default;
  explicit IntentLabelSet(std::vector<std::string> names);

  // Labels seen in the train split.
  static IntentLabelSet FromTrainSplit(const std::vector<TranscriptPair>& pairs);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  bool Contains(const std::string& name) const { return index_.count(name) > 0; }
  // Throws ValidationError for unknown labels.
  std::size_t Index(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace rslu

#endif  // RSLU_CORPUS_TRANSCRIPT_H_
