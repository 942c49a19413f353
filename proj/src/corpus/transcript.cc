// src/corpus/transcript.cc
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

#include "rslu/corpus/transcript.h"

#include "rslu/common/errors.h"

namespace rslu {

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "valid") return Split::kValid;
  if (name == "test") return Split::kTest;
  throw ValidationError("unknown split '" + std::string(name) + "'");
}

std::vector<TranscriptPair> FilterSplit(const std::vector<TranscriptPair>& pairs,
                                        Split split) {
  std::vector<TranscriptPair> out;
  for (const TranscriptPair& p : pairs) {
    if (p.split == split) out.push_back(p);
  }
  return out;
}

IntentLabelSet::IntentLabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw ValidationError("duplicate intent label '" + names_[i] + "'");
    }
  }
}

IntentLabelSet IntentLabelSet::FromTrainSplit(const std::vector<TranscriptPair>& pairs) {
  std::map<std::string, int> seen;
  for (const TranscriptPair& p : pairs) {
    if (p.split == Split::kTrain) seen[p.intent] = 1;
  }
  std::vector<std::string> names;
  for (const auto& [name, unused] : seen) names.push_back(name);
  return IntentLabelSet(std::move(names));
}

std::size_t IntentLabelSet::Index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw ValidationError("intent '" + name + "' is not in the training label set");
  }
  return it->second;
}

}  // namespace rslu
