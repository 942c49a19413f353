// tests/noise_test.cc
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

#include <doctest.h>

#include <cmath>

#include "rslu/common/errors.h"
#include "rslu/common/random.h"
#include "rslu/corpus/synthetic.h"
#include "rslu/corpus/tokenizer.h"
#include "rslu/noise/channel.h"
#include "rslu/noise/wer.h"

namespace rslu {
namespace {

using Tokens = std::vector<std::string>;

std::vector<TranscriptPair> ExamplePairs() {
  return {
      {"t1", "turn up", "turn off", "volume_up", Split::kTest},
      {"t2", "brighten the lights a little bit", "brighten the night for little bit", "lights",
       Split::kTest},
      {"t3", "please let me know the alarm kept for tuesday's meeting",
       "please let me know the alarm cap for tuesday's meet", "alarm", Split::kTest},
  };
}

std::vector<TranscriptPair> SyntheticTrain(int n, std::uint64_t seed = 7) {
  SyntheticSpec spec;
  spec.n_train = n;
  spec.n_valid = 0;
  spec.n_test = 0;
  spec.seed = seed;
  auto corpus = GenerateSyntheticCorpus(spec);
  for (auto& p : corpus) p.noisy = p.clean;
  return corpus;
}

// Independent O(nm) count of the minimum number of edits.
std::int64_t Levenshtein(const Tokens& a, const Tokens& b) {
  std::vector<std::int64_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

TEST_CASE("word error rate examples") {
  WerResult r = WordErrorRate({"turn", "up"}, {"turn", "off"});
  CHECK(r.wer == 0.5);
  CHECK(r.n_sub == 1);
  CHECK(r.n_ins + r.n_del == 0);

  r = WordErrorRate(Tokenize("brighten the lights a little bit"),
                    Tokenize("brighten the night for little bit"));
  CHECK(std::abs(r.wer - 1.0 / 3.0) < 1e-12);

  r = WordErrorRate({"a", "b"}, {"a", "b"});
  CHECK(r.wer == 0.0);

  r = WordErrorRate({"a", "b", "c"}, {});
  CHECK(r.wer == 1.0);
  CHECK(r.n_del == 3);

  r = WordErrorRate({"a"}, {"x", "y", "z"});
  CHECK(r.wer == 3.0);

  CHECK_THROWS_AS(WordErrorRate({}, {"a"}), ContractError);
}

TEST_CASE("word error rate matches an independent edit count") {
  Rng rng(11);
  const Tokens alphabet = {"a", "b", "c", "d"};
  for (int t = 0; t < 500; ++t) {
    Tokens ref(1 + UniformIndex(rng, 7)), hyp(UniformIndex(rng, 8));
    for (auto& w : ref) w = alphabet[UniformIndex(rng, alphabet.size())];
    for (auto& w : hyp) w = alphabet[UniformIndex(rng, alphabet.size())];
    WerResult r = WordErrorRate(ref, hyp);
    CHECK(r.edits() == Levenshtein(ref, hyp));
    CHECK(r.n_ref == static_cast<std::int64_t>(ref.size()));
    CHECK(r.n_ref - r.n_del + r.n_ins == static_cast<std::int64_t>(hyp.size()));
    CHECK(WordErrorRate(ref, ref).wer == 0.0);
  }
}

TEST_CASE("corpus report on the three published pairs") {
  WerReport report = CorpusWerReport(ExamplePairs());
  // lights->night and a->for give the middle pair two edits, so five in all.
  CHECK(report.total_edits() == 5);
  CHECK(report.total_ref == 18);
  REQUIRE(report.pairs.size() == 3);
  CHECK(report.pairs[0].result.wer == 0.5);
  CHECK(std::abs(report.pairs[1].result.wer - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(report.pairs[2].result.wer - 0.2) < 1e-12);
  CHECK(std::abs(report.corpus_wer - 5.0 / 18.0) < 1e-12);
  CHECK(std::abs(report.mean_pair_wer - (0.5 + 1.0 / 3.0 + 0.2) / 3.0) < 1e-12);
  CHECK(report.pairs[0].errors == Tokens{"up -> off"});
  CHECK(report.WorstK(2) == std::vector<std::size_t>{0, 1});
  CHECK(report.over_one.empty());
  CHECK(report.ToTable().find("corpus") != std::string::npos);
}

TEST_CASE("corpus report counts equal per-pair recomputation") {
  auto corpus = SyntheticTrain(300);
  NoiseConfig cfg;
  cfg.target_wer = 0.3;
  NoiseChannel channel(cfg, Vocabulary::Build(corpus, 1));
  auto noisy = CorruptCorpus(corpus, channel, 0.3);
  WerReport report = CorpusWerReport(noisy);
  std::int64_t s = 0, i = 0, d = 0, n = 0;
  double sum = 0.0;
  for (const auto& p : noisy) {
    WerResult r = WordErrorRate(Tokenize(p.clean), Tokenize(p.noisy));
    s += r.n_sub;
    i += r.n_ins;
    d += r.n_del;
    n += r.n_ref;
    sum += r.wer;
  }
  CHECK(report.total_sub == s);
  CHECK(report.total_ins == i);
  CHECK(report.total_del == d);
  CHECK(report.total_ref == n);
  CHECK(report.corpus_wer == doctest::Approx(static_cast<double>(s + i + d) / n).epsilon(1e-12));
  CHECK(report.mean_pair_wer == doctest::Approx(sum / noisy.size()).epsilon(1e-12));
}

TEST_CASE("identical corpus reports zero") {
  WerReport report = CorpusWerReport(SyntheticTrain(20));
  CHECK(report.corpus_wer == 0.0);
  CHECK(report.mean_pair_wer == 0.0);
  CHECK(report.total_edits() == 0);
}

TEST_CASE("noise config validation") {
  NoiseConfig cfg;
  cfg.w_sub = 0.5;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  NoiseConfig high;
  high.target_wer = 1.0;
  CHECK_THROWS_AS(high.Validate(), ConfigError);
  NoiseConfig negative;
  negative.w_sub = 1.2;
  negative.w_ins = -0.2;
  negative.w_del = 0.0;
  CHECK_THROWS_AS(negative.Validate(), ConfigError);
}

TEST_CASE("corrupt is deterministic, preserves labels and is identity at zero") {
  auto corpus = SyntheticTrain(100);
  Vocabulary vocab = Vocabulary::Build(corpus, 1);
  NoiseConfig cfg;
  cfg.target_wer = 0.4;
  cfg.seed = 3;
  NoiseChannel channel(cfg, vocab);
  const Tokens clean = Tokenize(corpus[0].clean);
  CHECK(channel.Corrupt(clean, 0.5, 42) == channel.Corrupt(clean, 0.5, 42));
  CHECK(channel.Corrupt(clean, 0.0, 42) == clean);
  CHECK_THROWS_AS(channel.Corrupt({}, 0.5, 1), ContractError);

  auto a = CorruptCorpus(corpus, channel, 0.5);
  std::vector<TranscriptPair> reversed(corpus.rbegin(), corpus.rend());
  auto b = CorruptCorpus(reversed, channel, 0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& mirror = b[a.size() - 1 - i];
    CHECK(a[i].noisy == mirror.noisy);  // order independent
    CHECK(a[i].intent == corpus[i].intent);
    CHECK_FALSE(a[i].noisy.empty());
    for (const auto& w : Tokenize(a[i].noisy)) CHECK(vocab.Contains(w));
  }

  // Raising p_err only adds error events for fixed seeds.
  for (const auto& p : corpus) {
    const Tokens t = Tokenize(p.clean);
    const auto lo = WordErrorRate(t, channel.Corrupt(t, 0.1, PairSeed(p.id)));
    const auto hi = WordErrorRate(t, channel.Corrupt(t, 0.9, PairSeed(p.id)));
    CHECK(hi.edits() >= lo.edits());
  }
}

TEST_CASE("nearest word substitution") {
  Vocabulary vocab = Vocabulary::Build({{"1", "set zero cero kept cap", "set", "x"}}, 1);
  NoiseChannel channel(NoiseConfig{}, vocab);
  CHECK(CharEditDistance("kept", "cap") == 3);
  CHECK(CharEditDistance("zero", "cero") == 1);
  CHECK(channel.NearestWord("zero") == "cero");
  CHECK(channel.NearestWord("set") != "set");
}

TEST_CASE("calibration") {
  auto corpus = SyntheticTrain(1000);
  Vocabulary vocab = Vocabulary::Build(corpus, 1);
  std::vector<TranscriptPair> sample(corpus.begin(), corpus.begin() + 500);
  std::vector<TranscriptPair> held_out(corpus.begin() + 500, corpus.end());

  NoiseConfig zero;
  CHECK(Calibrate(NoiseChannel(zero, vocab), sample).p_err == 0.0);

  NoiseConfig sub;
  sub.target_wer = 0.3;
  sub.w_sub = 1.0;
  sub.w_ins = 0.0;
  sub.w_del = 0.0;
  auto result = Calibrate(NoiseChannel(sub, vocab), sample);
  CHECK(std::abs(result.p_err - 0.3) <= 0.01);

  NoiseConfig mixed;
  mixed.target_wer = 0.4;
  NoiseChannel channel(mixed, vocab);
  auto mixed_result = Calibrate(channel, sample);
  const double achieved = SimulateCorpusWer(channel, held_out, mixed_result.p_err, 99);
  CHECK(achieved >= 0.37);
  CHECK(achieved <= 0.43);

  // Deletions alone can remove at most all but one token per utterance.
  NoiseConfig del;
  del.target_wer = 0.99;
  del.w_sub = 0.0;
  del.w_ins = 0.0;
  del.w_del = 1.0;
  try {
    Calibrate(NoiseChannel(del, vocab), sample);
    FAIL("expected a calibration error");
  } catch (const CalibrationError& e) {
    CHECK(e.best_wer() < 0.99);
    CHECK(e.best_wer() > 0.5);
  }
}

}  // namespace
}  // namespace rslu
