// include/rslu/train/pipeline.h
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

#ifndef RSLU_TRAIN_PIPELINE_H_
#define RSLU_TRAIN_PIPELINE_H_

#include <vector>

#include <json.hpp>

#include "rslu/corpus/transcript.h"
#include "rslu/corpus/vocabulary.h"
#include "rslu/data/encoded_dataset.h"
#include "rslu/eval/metrics.h"
#include "rslu/train/trainer.h"

namespace rslu {

// Train-split vocabulary and label set plus encoded splits.
struct PreparedData {
  Vocabulary vocab;
  IntentLabelSet labels;
  EncodedDataset train, valid, test;
};

PreparedData PrepareData(const std::vector<TranscriptPair>& pairs, int min_freq,
                         std::int64_t max_len);

struct ExperimentResult {
  TrainConfig config;  // with the resolved encoder config
  TrainOutcome outcome;
  MetricsReport test_clean;
  MetricsReport test_noisy;  // carries the default WER buckets

  // Deterministic summary; contains no timing information.
  nlohmann::json MetricsJson() const;
};

// Resolves data-dependent encoder sizes, trains config.method and evaluates
// the deployed (inference) network on both sides of the test split.
ExperimentResult RunExperiment(TrainConfig config, const PreparedData& data,
                               StepObserver observer = {});

}  // namespace rslu

#endif  // RSLU_TRAIN_PIPELINE_H_
