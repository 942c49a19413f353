// src/noise/channel.cc
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

#include "rslu/noise/channel.h"

#include <algorithm>
#include <cmath>

#include "rslu/align/alignment.h"
#include "rslu/common/errors.h"
#include "rslu/common/random.h"
#include "rslu/corpus/tokenizer.h"

namespace rslu {

namespace {

constexpr double kCalibrationTolerance = 0.01;
constexpr int kCalibrationSimulations = 5;
constexpr int kMaxCalibrationIterations = 30;
// Upper end of the search interval; p_err itself must stay below 1.
constexpr double kMaxErrorProbability = 1.0 - 1e-9;

}  // namespace

void NoiseConfig::Validate() const {
  if (!(target_wer >= 0.0 && target_wer < 1.0)) {
    throw ConfigError("target_wer must be in [0, 1), got " + std::to_string(target_wer));
  }
  if (w_sub < 0.0 || w_ins < 0.0 || w_del < 0.0) {
    throw ConfigError("error mix weights must be non-negative");
  }
  if (std::abs(w_sub + w_ins + w_del - 1.0) > 1e-12) {
    throw ConfigError("error mix must sum to 1");
  }
}

std::int64_t CharEditDistance(const std::string& a, const std::string& b) {
  std::vector<std::int64_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::uint64_t PairSeed(const std::string& pair_id) { return StableHash(pair_id); }

NoiseChannel::NoiseChannel(NoiseConfig config, const Vocabulary& vocab)
    : config_(config), words_(vocab.Words()) {
  config_.Validate();
  if (words_.empty()) throw ContractError("noise channel needs a non-empty vocabulary");
  std::sort(words_.begin(), words_.end());
  if (config_.confusion_mode == ConfusionMode::kCharEditNearest) {
    for (const std::string& w : words_) nearest_[w] = NearestWord(w);
  }
}

std::string NoiseChannel::NearestWord(const std::string& token) const {
  if (auto it = nearest_.find(token); it != nearest_.end()) return it->second;
  const std::string* best = nullptr;
  std::int64_t best_d = 0;
  // words_ is sorted, so the first minimum found is the lexicographic tie-break.
  for (const std::string& w : words_) {
    if (w == token) continue;
    const std::int64_t d = CharEditDistance(token, w);
    if (!best || d < best_d) {
      best = &w;
      best_d = d;
    }
  }
  return best ? *best : token;
}

std::vector<std::string> NoiseChannel::Corrupt(const std::vector<std::string>& clean, double p_err,
                                               std::uint64_t pair_seed) const {
  if (clean.empty()) throw ContractError("cannot corrupt an empty transcript");
  if (!(p_err >= 0.0 && p_err < 1.0)) throw ContractError("p_err must be in [0, 1)");
  Rng rng(MixSeeds(config_.seed, pair_seed));
  std::vector<std::string> out;
  out.reserve(clean.size() + 2);
  for (const std::string& token : clean) {
    const double u_event = UniformUnit(rng);
    const double u_kind = UniformUnit(rng);
    const double u_pick = UniformUnit(rng);
    if (u_event >= p_err) {
      out.push_back(token);
      continue;
    }
    auto pick_uniform = [&]() -> const std::string& {
      const std::size_t i = std::min(words_.size() - 1,
                                     static_cast<std::size_t>(u_pick * static_cast<double>(words_.size())));
      return words_[i];
    };
    if (u_kind < config_.w_sub) {
      if (config_.confusion_mode == ConfusionMode::kCharEditNearest) {
        out.push_back(NearestWord(token));
      } else {
        std::string w = pick_uniform();
        if (w == token && words_.size() > 1) {
          w = words_[(static_cast<std::size_t>(std::lower_bound(words_.begin(), words_.end(), w) -
                                               words_.begin()) + 1) % words_.size()];
        }
        out.push_back(std::move(w));
      }
    } else if (u_kind < config_.w_sub + config_.w_ins) {
      out.push_back(token);
      out.push_back(pick_uniform());
    }
    // Otherwise the token is deleted.
  }
  if (out.empty()) out.push_back(clean.back());
  return out;
}

double SimulateCorpusWer(const NoiseChannel& channel, const std::vector<TranscriptPair>& sample,
                         double p_err, std::uint64_t simulation_seed) {
  std::int64_t edits = 0, ref = 0;
  for (const TranscriptPair& p : sample) {
    const std::vector<std::string> tokens = Tokenize(p.clean);
    if (tokens.empty()) continue;
    const auto noisy = channel.Corrupt(tokens, p_err, MixSeeds(simulation_seed, PairSeed(p.id)));
    edits += Align(tokens, noisy).edit_distance;
    ref += static_cast<std::int64_t>(tokens.size());
  }
  if (ref == 0) throw ContractError("calibration sample has no reference tokens");
  return static_cast<double>(edits) / static_cast<double>(ref);
}

CalibrationResult Calibrate(const NoiseChannel& channel, const std::vector<TranscriptPair>& sample) {
  if (sample.empty()) throw ContractError("calibration needs a non-empty sample");
  const double target = channel.config().target_wer;
  if (target == 0.0) return {0.0, 0.0, 0};
  auto measure = [&](double p) {
    double total = 0.0;
    for (int s = 0; s < kCalibrationSimulations; ++s) {
      total += SimulateCorpusWer(channel, sample, p,
                                 MixSeeds(channel.config().seed, 0xca1bULL, static_cast<std::uint64_t>(s)));
    }
    return total / kCalibrationSimulations;
  };

  CalibrationResult best{0.0, 0.0, 0};
  double best_gap = target;
  double lo = 0.0, hi = kMaxErrorProbability;
  for (int it = 1; it <= kMaxCalibrationIterations; ++it) {
    const double p = 0.5 * (lo + hi);
    const double wer = measure(p);
    const double gap = std::abs(wer - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = {p, wer, it};
    }
    if (gap <= kCalibrationTolerance) return {p, wer, it};
    if (wer < target) {
      lo = p;
    } else {
      hi = p;
    }
  }
  throw CalibrationError("could not reach target WER " + std::to_string(target) +
                             " within " + std::to_string(kMaxCalibrationIterations) +
                             " iterations",
                         best.achieved_wer);
}

std::vector<TranscriptPair> CorruptCorpus(const std::vector<TranscriptPair>& pairs,
                                          const NoiseChannel& channel, double p_err) {
  std::vector<TranscriptPair> out = pairs;
  for (TranscriptPair& p : out) {
    const std::vector<std::string> tokens = Tokenize(p.clean);
    if (tokens.empty()) throw ContractError("pair '" + p.id + "' has an empty clean transcript");
    p.noisy = JoinTokens(channel.Corrupt(tokens, p_err, PairSeed(p.id)));
  }
  return out;
}

}  // namespace rslu
