// src/eval/metrics.cc
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

#include "rslu/eval/metrics.h"

#include <cmath>
#include <limits>

#include "rslu/common/errors.h"

namespace rslu {

nlohmann::json MetricsReport::ToJson() const {
  nlohmann::json j;
  j["accuracy"] = accuracy;
  j["macro_f1"] = macro_f1;
  j["n_examples"] = n_examples;
  j["per_class"] = nlohmann::json::array();
  for (const ClassMetrics& c : per_class) {
    j["per_class"].push_back({{"intent", c.name},
                              {"precision", c.precision},
                              {"recall", c.recall},
                              {"f1", c.f1},
                              {"support", c.support},
                              {"predicted", c.predicted}});
  }
  if (!wer_buckets.empty()) {
    j["wer_buckets"] = nlohmann::json::array();
    for (const WerBucket& b : wer_buckets) {
      nlohmann::json e = {{"lo", b.lo}, {"n", b.n}, {"correct", b.correct}};
      e["hi"] = std::isinf(b.hi) ? nlohmann::json(nullptr) : nlohmann::json(b.hi);
      e["accuracy"] = b.accuracy ? nlohmann::json(*b.accuracy) : nlohmann::json(nullptr);
      j["wer_buckets"].push_back(e);
    }
  }
  j["warnings"] = warnings;
  return j;
}

std::vector<double> DefaultWerEdges() { return {0.0, 0.1, 0.3, 0.5, 1.0}; }

MetricsReport ComputeMetrics(const std::vector<std::int64_t>& gold,
                             const std::vector<std::int64_t>& predicted,
                             const IntentLabelSet& labels) {
  if (gold.size() != predicted.size()) {
    throw ContractError("gold and predicted label lists differ in length");
  }
  const std::size_t k = labels.size();
  if (k == 0) throw ContractError("empty label set");
  std::vector<std::int64_t> tp(k, 0), support(k, 0), pred(k, 0);
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::int64_t g = gold[i], p = predicted[i];
    if (g < 0 || g >= static_cast<std::int64_t>(k) || p < 0 || p >= static_cast<std::int64_t>(k)) {
      throw ContractError("label index out of range at example " + std::to_string(i));
    }
    ++support[g];
    ++pred[p];
    if (g == p) {
      ++tp[g];
      ++correct;
    }
  }
  MetricsReport report;
  report.n_examples = static_cast<std::int64_t>(gold.size());
  report.accuracy = gold.empty() ? 0.0 : static_cast<double>(correct) / gold.size();
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics m;
    m.name = labels.name(c);
    m.support = support[c];
    m.predicted = pred[c];
    m.precision = pred[c] > 0 ? static_cast<double>(tp[c]) / pred[c] : 0.0;
    m.recall = support[c] > 0 ? static_cast<double>(tp[c]) / support[c] : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    if (support[c] == 0 && pred[c] == 0) {
      report.warnings.push_back("class '" + m.name +
                                "' has no gold or predicted examples; counted as F1 = 0");
    }
    f1_sum += m.f1;
    report.per_class.push_back(m);
  }
  report.macro_f1 = f1_sum / static_cast<double>(k);
  return report;
}

std::vector<WerBucket> BucketByWer(const std::vector<double>& wers,
                                   const std::vector<bool>& correct,
                                   const std::vector<double>& edges) {
  if (wers.size() != correct.size()) throw ContractError("one correctness flag per WER needed");
  if (edges.empty()) throw ConfigError("at least one bucket edge is needed");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw ConfigError("bucket edges must increase strictly");
  }
  std::vector<WerBucket> buckets;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    WerBucket b;
    b.lo = edges[i];
    b.hi = i + 1 < edges.size() ? edges[i + 1] : std::numeric_limits<double>::infinity();
    buckets.push_back(b);
  }
  for (std::size_t i = 0; i < wers.size(); ++i) {
    std::size_t k = 0;
    while (k + 1 < buckets.size() && wers[i] >= buckets[k].hi) ++k;
    ++buckets[k].n;
    if (correct[i]) ++buckets[k].correct;
  }
  for (WerBucket& b : buckets) {
    if (b.n > 0) b.accuracy = static_cast<double>(b.correct) / b.n;
  }
  return buckets;
}

}  // namespace rslu
