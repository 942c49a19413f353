// src/train/pipeline.cc
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

#include "rslu/train/pipeline.h"

#include "rslu/eval/analysis.h"

namespace rslu {

PreparedData PrepareData(const std::vector<TranscriptPair>& pairs, int min_freq,
                         std::int64_t max_len) {
  PreparedData d;
  d.vocab = Vocabulary::Build(pairs, min_freq);
  d.labels = IntentLabelSet::FromTrainSplit(pairs);
  d.train = EncodedDataset::Build(FilterSplit(pairs, Split::kTrain), d.vocab, d.labels, max_len);
  d.valid = EncodedDataset::Build(FilterSplit(pairs, Split::kValid), d.vocab, d.labels, max_len);
  d.test = EncodedDataset::Build(FilterSplit(pairs, Split::kTest), d.vocab, d.labels, max_len);
  return d;
}

nlohmann::json ExperimentResult::MetricsJson() const {
  return {{"method", MethodName(config.method)},
          {"seed", config.seed},
          {"steps", outcome.steps},
          {"best_epoch", outcome.best_epoch},
          {"best_valid_accuracy", outcome.best_valid_accuracy},
          {"test", {{"clean", test_clean.ToJson()}, {"noisy", test_noisy.ToJson()}}}};
}

ExperimentResult RunExperiment(TrainConfig config, const PreparedData& data,
                               StepObserver observer) {
  config.encoder = ResolveEncoderConfig(config, data.vocab.size(),
                                        static_cast<std::int64_t>(data.labels.size()));
  ExperimentResult r;
  r.config = config;
  r.outcome = TrainMethod(config, data.train, data.valid, std::move(observer));
  const std::vector<double> edges = DefaultWerEdges();
  r.test_clean = Evaluate(r.outcome.inference(), data.test, InputSide::kClean, data.labels);
  r.test_noisy =
      Evaluate(r.outcome.inference(), data.test, InputSide::kNoisy, data.labels, &edges);
  return r;
}

}  // namespace rslu
