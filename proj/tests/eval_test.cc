// tests/eval_test.cc
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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "data_fixtures.h"
#include "rslu/common/errors.h"
#include "rslu/common/io.h"
#include "rslu/eval/analysis.h"
#include "rslu/eval/metrics.h"
#include "test_util.h"

namespace rslu {
namespace {

using testing::NoisyCorpus;
using testing::Resolved;
using testing::TinyTrainConfig;

const IntentLabelSet kAbc({"A", "B", "C"});

const PreparedData& Data() {
  static const PreparedData data = PrepareData(NoisyCorpus(80, 10, 20, 0.3), 1, 16);
  return data;
}

EncoderConfig ConfigFor(const PreparedData& d) {
  return Resolved(TinyTrainConfig(Method::kCcl, 1), d).encoder;
}

std::int64_t LineCount(const std::string& text) {
  return static_cast<std::int64_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_CASE("metrics on a small example") {
  const MetricsReport r = ComputeMetrics({0, 0, 1, 2}, {0, 1, 1, 2}, kAbc);
  CHECK(r.accuracy == 0.75);
  CHECK(r.macro_f1 == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
  CHECK(r.n_examples == 4);
  REQUIRE(r.per_class.size() == 3);
  CHECK(r.per_class[0].precision == 1.0);
  CHECK(r.per_class[0].recall == 0.5);
  CHECK(r.per_class[1].precision == 0.5);
  CHECK(r.per_class[1].recall == 1.0);
  CHECK(r.per_class[2].f1 == 1.0);
  CHECK(r.per_class[1].support == 1);
  CHECK(r.per_class[1].predicted == 2);
  CHECK(r.warnings.empty());

  const MetricsReport perfect = ComputeMetrics({0, 1, 2, 1}, {0, 1, 2, 1}, kAbc);
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.macro_f1 == 1.0);
}

TEST_CASE("classes with no gold and no predictions") {
  const MetricsReport r = ComputeMetrics({0, 0, 0}, {0, 0, 0}, kAbc);
  CHECK(r.accuracy == 1.0);
  CHECK(r.per_class[1].f1 == 0.0);
  CHECK(r.per_class[2].f1 == 0.0);
  CHECK(r.macro_f1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r.warnings.size() == 2);

  const MetricsReport miss = ComputeMetrics({0, 1}, {1, 1}, kAbc);
  CHECK(miss.per_class[0].precision == 0.0);  // nothing predicted
  CHECK(miss.per_class[0].recall == 0.0);
  CHECK_THROWS(ComputeMetrics({0, 1}, {0}, kAbc));
}

TEST_CASE("wer buckets") {
  const std::vector<double> wers = {0.0, 0.05, 0.2, 0.4, 0.7, 1.5, 0.1};
  const std::vector<bool> correct = {true, false, true, true, false, false, true};
  const auto buckets = BucketByWer(wers, correct, DefaultWerEdges());
  REQUIRE(buckets.size() == 5);
  const std::vector<std::int64_t> n = {2, 2, 1, 1, 1};
  const std::vector<std::int64_t> c = {1, 2, 1, 0, 0};
  std::int64_t total = 0, total_correct = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(buckets[k].n == n[k]);
    CHECK(buckets[k].correct == c[k]);
    REQUIRE(buckets[k].accuracy.has_value());
    CHECK(*buckets[k].accuracy == static_cast<double>(c[k]) / n[k]);
    total += buckets[k].n;
    total_correct += buckets[k].correct;
  }
  CHECK(std::isinf(buckets[4].hi));
  CHECK(total == 7);
  CHECK(total_correct == 4);

  const auto zero = BucketByWer({0.0, 0.0, 0.0}, {true, false, true}, DefaultWerEdges());
  CHECK(zero[0].n == 3);
  for (std::size_t k = 1; k < zero.size(); ++k) {
    CHECK(zero[k].n == 0);
    CHECK_FALSE(zero[k].accuracy.has_value());
  }
}

TEST_CASE("evaluate recombines buckets into the overall accuracy") {
  const PreparedData& d = Data();
  const NetworkPair pair = InitNetworks(ConfigFor(d));
  const std::vector<double> edges = DefaultWerEdges();
  const MetricsReport r = Evaluate(pair.inference, d.test, InputSide::kNoisy, d.labels, &edges);
  std::int64_t n = 0, correct = 0;
  for (const WerBucket& b : r.wer_buckets) {
    n += b.n;
    correct += b.correct;
  }
  CHECK(n == static_cast<std::int64_t>(d.test.size()));
  CHECK(static_cast<double>(correct) / n == doctest::Approx(r.accuracy).epsilon(1e-12));
  const auto pred = PredictIntents(pair.inference, d.test, InputSide::kNoisy);
  CHECK(ComputeMetrics(d.test.labels(), pred, d.labels).accuracy == r.accuracy);

  d.test.ResetAudit();
  const MetricsReport clean = Evaluate(pair.inference, d.test, InputSide::kClean, d.labels);
  CHECK(d.test.noisy_reads() == 0);
  CHECK(clean.wer_buckets.empty());
}

TEST_CASE("similarity maps of identical networks on identical inputs") {
  const PreparedData d = PrepareData(NoisyCorpus(40, 0, 10, 0.0), 1, 16);
  const NetworkPair pair = InitNetworks(ConfigFor(d));
  for (std::size_t i = 0; i < d.test.size(); ++i) {
    const SimilarityMap m = TokenSimilarityMap(pair.reference, pair.inference, d.test, i);
    CHECK(m.rows() == static_cast<std::size_t>(d.test.Noisy(i).true_length));
    CHECK(m.cols() == static_cast<std::size_t>(d.test.Clean(i).true_length));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      CHECK(m.at(r, r) == doctest::Approx(1.0).epsilon(1e-9));
      for (std::size_t c = 0; c < m.cols(); ++c) CHECK(std::abs(m.at(r, c)) <= 1.0 + 1e-9);
    }
    const AlignedContrast contrast = AlignedCellContrast(m, d.test.alignment(i));
    CHECK(contrast.n_aligned == static_cast<std::int64_t>(m.rows()));
    CHECK(contrast.aligned_mean == doctest::Approx(1.0).epsilon(1e-9));
  }
  const SimilarityMap u =
      UtteranceSimilarityMap(pair.reference, pair.inference, d.test, {0, 3, 5});
  CHECK(u.rows() == 3);
  CHECK(u.cols() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(u.at(k, k) == doctest::Approx(1.0).epsilon(1e-9));
  const std::string text = u.RenderText();
  CHECK_FALSE(text.empty());
  CHECK(u.ToJson()["matrix"].size() == 3);
}

TEST_CASE("embedding export") {
  const PreparedData& d = Data();
  const NetworkPair pair = InitNetworks(ConfigFor(d));
  const std::string tokens = EmbeddingsJsonl(pair.inference, d.test, InputSide::kNoisy,
                                             EmbeddingLevel::kToken);
  std::int64_t expected = 0;
  for (std::size_t i = 0; i < d.test.size(); ++i) expected += d.test.Noisy(i).true_length;
  CHECK(LineCount(tokens) == expected);
  const std::string utts = EmbeddingsJsonl(pair.inference, d.test, InputSide::kClean,
                                           EmbeddingLevel::kUtterance);
  CHECK(LineCount(utts) == static_cast<std::int64_t>(d.test.size()));
  std::istringstream lines(utts);
  std::string line;
  std::getline(lines, line);
  const auto j = nlohmann::json::parse(line);
  CHECK(j["vector"].size() == static_cast<std::size_t>(pair.inference.config().d_model));
  CHECK(j["side"] == "clean");
  CHECK(utts == EmbeddingsJsonl(pair.inference, d.test, InputSide::kClean,
                                EmbeddingLevel::kUtterance));

  testing::TempDir dir("export");
  ExportEmbeddings(pair.inference, d.test, InputSide::kNoisy, EmbeddingLevel::kToken,
                   dir / "e.jsonl");
  CHECK(ReadFile(dir / "e.jsonl") == tokens);
  CHECK_THROWS_AS(ParseEmbeddingLevel("word"), ConfigError);
}

TEST_CASE("top-k distribution") {
  const PreparedData& d = Data();
  const NetworkPair pair = InitNetworks(ConfigFor(d));
  const std::size_t n = d.labels.size();
  std::vector<std::vector<double>> probs;
  const auto pred = PredictIntents(pair.inference, d.test, InputSide::kNoisy, &probs);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto all = TopKDistribution(pair.inference, d.test, i, InputSide::kNoisy, d.labels, n);
    double sum = 0.0;
    for (std::size_t k = 0; k < all.size(); ++k) {
      sum += all[k].prob;
      if (k > 0) CHECK(all[k - 1].prob >= all[k].prob);
      CHECK(all[k].intent == d.labels.name(static_cast<std::size_t>(all[k].index)));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    const auto top = TopKDistribution(pair.inference, d.test, i, InputSide::kNoisy, d.labels, 1);
    CHECK(top[0].index == pred[i]);
    CHECK(top[0].prob == doctest::Approx(probs[i][static_cast<std::size_t>(pred[i])]));
  }
  CHECK_THROWS_AS(TopKDistribution(pair.inference, d.test, 0, InputSide::kNoisy, d.labels, 0),
                  ContractError);
  CHECK_THROWS_AS(
      TopKDistribution(pair.inference, d.test, 0, InputSide::kNoisy, d.labels, n + 1),
      ContractError);
}

}  // namespace
}  // namespace rslu
