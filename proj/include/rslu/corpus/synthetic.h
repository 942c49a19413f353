// include/rslu/corpus/synthetic.h
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

#ifndef RSLU_CORPUS_SYNTHETIC_H_
#define RSLU_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rslu/corpus/transcript.h"

namespace rslu {

// Configuration for the built-in template corpus. `fillers` is the number of
// values used per slot type.
struct SyntheticSpec {
  int n_intents = 8;
  int templates_per_intent = 4;
  int fillers = 20;
  int n_train = 2000;
  int n_valid = 250;
  int n_test = 500;
  std::uint64_t seed = 7;

  // Parses the JSON config; unknown keys are rejected. ConfigError names the
  // offending field.
  static SyntheticSpec FromJson(const std::string& text);
  std::string ToJson() const;
};

// Largest supported values for the spec fields.
int MaxSyntheticIntents();
int MaxTemplatesPerIntent();
int MaxFillers();

// Number of distinct utterances the bank can produce for intent `k` under spec.
std::uint64_t IntentCapacity(const SyntheticSpec& spec, int k);

// Samples unique utterances from intent templates. Intents are balanced within
// each split; the noisy field is left empty. Deterministic in spec.seed.
// Throws ConfigError for invalid sizes and CapacityError when a split asks for
// more unique utterances than the template/filler space holds.
std::vector<TranscriptPair> GenerateSyntheticCorpus(const SyntheticSpec& spec);

}  // namespace rslu

#endif  // RSLU_CORPUS_SYNTHETIC_H_
