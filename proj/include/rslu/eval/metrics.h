// include/rslu/eval/metrics.h
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

#ifndef RSLU_EVAL_METRICS_H_
#define RSLU_EVAL_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rslu/corpus/transcript.h"

namespace rslu {

struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;    // gold count
  std::int64_t predicted = 0;  // predicted count
};

// [lo, hi) with hi = +inf for the last bucket.
struct WerBucket {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t n = 0;
  std::int64_t correct = 0;
  std::optional<double> accuracy;  // empty when n = 0
};

struct MetricsReport {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::int64_t n_examples = 0;
  std::vector<ClassMetrics> per_class;
  std::vector<WerBucket> wer_buckets;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

std::vector<double> DefaultWerEdges();

// Macro-F1 is the mean over the full label set. A class with no gold and no
// predicted examples scores F1 = 0 and adds a warning; precision (recall) is
// 0 when nothing was predicted (nothing was gold) for the class.
MetricsReport ComputeMetrics(const std::vector<std::int64_t>& gold,
                             const std::vector<std::int64_t>& predicted,
                             const IntentLabelSet& labels);

// Edges e_0 < e_1 < ... ; bucket k is [e_k, e_{k+1}), the last is [e_last, inf).
// Values below e_0 fall into the first bucket.
std::vector<WerBucket> BucketByWer(const std::vector<double>& wers,
                                   const std::vector<bool>& correct,
                                   const std::vector<double>& edges);

}  // namespace rslu

#endif  // RSLU_EVAL_METRICS_H_
