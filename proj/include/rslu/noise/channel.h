// include/rslu/noise/channel.h
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

#ifndef RSLU_NOISE_CHANNEL_H_
#define RSLU_NOISE_CHANNEL_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rslu/corpus/transcript.h"
#include "rslu/corpus/vocabulary.h"

namespace rslu {

enum class ConfusionMode { kCharEditNearest, kUniformRandom };

struct NoiseConfig {
  double target_wer = 0.0;
  double w_sub = 0.6;
  double w_ins = 0.2;
  double w_del = 0.2;
  std::uint64_t seed = 0;
  ConfusionMode confusion_mode = ConfusionMode::kCharEditNearest;

  // ConfigError unless the mix sums to 1 (+-1e-12), weights are >= 0 and
  // target_wer is in [0, 1).
  void Validate() const;
};

// Levenshtein distance over characters.
std::int64_t CharEditDistance(const std::string& a, const std::string& b);

// Seed for one pair, independent of processing order.
std::uint64_t PairSeed(const std::string& pair_id);

// Synthetic ASR-error channel. Each clean token independently triggers an
// error event with probability p_err; the event kind follows the mix. Three
// uniforms are drawn per token whether or not an event fires, so for fixed
// seeds raising p_err only adds events.
class NoiseChannel {
 public:
  NoiseChannel(NoiseConfig config, const Vocabulary& vocab);

  const NoiseConfig& config() const { return config_; }

  // Deterministic in (config.seed, pair_seed). If every token would be
  // deleted the last one is kept. Throws ContractError for empty input.
  std::vector<std::string> Corrupt(const std::vector<std::string>& clean, double p_err,
                                   std::uint64_t pair_seed) const;

  // Nearest vocabulary word by character edits (excluding the token itself),
  // ties broken lexicographically.
  std::string NearestWord(const std::string& token) const;

 private:
  NoiseConfig config_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::string> nearest_;
};

struct CalibrationResult {
  double p_err = 0.0;
  double achieved_wer = 0.0;
  int iterations = 0;
};

// Binary search on p_err in [0, 1) until the corpus WER averaged over five
// seeded simulations on `sample` is within 0.01 of target (at most 30
// iterations). Throws CalibrationError, carrying the best WER reached, when
// the target cannot be met.
CalibrationResult Calibrate(const NoiseChannel& channel, const std::vector<TranscriptPair>& sample);

// Corpus WER of one simulated corruption of `sample` at p_err.
double SimulateCorpusWer(const NoiseChannel& channel, const std::vector<TranscriptPair>& sample,
                         double p_err, std::uint64_t simulation_seed);

// Fills every pair's noisy field; ids drive the per-pair seeds.
std::vector<TranscriptPair> CorruptCorpus(const std::vector<TranscriptPair>& pairs,
                                          const NoiseChannel& channel, double p_err);

}  // namespace rslu

#endif  // RSLU_NOISE_CHANNEL_H_
