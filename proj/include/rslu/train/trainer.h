// include/rslu/train/trainer.h
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

#ifndef RSLU_TRAIN_TRAINER_H_
#define RSLU_TRAIN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rslu/data/encoded_dataset.h"
#include "rslu/encoder/network.h"
#include "rslu/train/config.h"

namespace rslu {

// JSON-lines training record: one object per optimizer step plus one per
// epoch. Epoch records carry "wall_s"; nothing else depends on the clock.
class TrainLog {
 public:
  void Add(nlohmann::json record) { records_.push_back(std::move(record)); }
  const std::vector<nlohmann::json>& records() const { return records_; }
  std::string ToJsonl() const;
  // Mean of `key` over step records of `stage` in `epoch`.
  double MeanStepValue(const std::string& stage, int epoch, const std::string& key) const;
  // Copy without wall-clock fields, for exact comparisons.
  std::vector<nlohmann::json> Deterministic() const;

 private:
  std::vector<nlohmann::json> records_;
};

enum class StepPhase { kStage2Begin, kAfterReferenceUpdate, kAfterInferenceUpdate };

struct StepEvent {
  StepPhase phase;
  std::int64_t step = 0;
  const Network* reference = nullptr;
  const Network* inference = nullptr;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct TrainOutcome {
  Method method = Method::kCcl;
  // "reference" and "inference" for CCL; "inference" alone for baselines.
  std::vector<std::pair<std::string, Network>> networks;
  TrainLog log;
  double best_valid_accuracy = 0.0;
  int best_epoch = -1;
  std::int64_t steps = 0;

  const Network& inference() const;
  const Network* reference() const;
};

class Trainer {
 public:
  // The encoder config in `config` must already carry vocab_size and
  // n_intents.
  explicit Trainer(TrainConfig config);

  void set_observer(StepObserver observer) { observer_ = std::move(observer); }
  const TrainConfig& config() const { return config_; }
  TrainLog& log() { return log_; }
  std::int64_t steps() const { return step_; }

  // Token/utterance contrastive training of both encoders.
  void RunStage1(NetworkPair& pair, const EncodedDataset& train);
  // Reference CE step, then the inference network follows the refreshed
  // reference outputs. Early stopping on noisy validation accuracy of the
  // inference network; the best parameters of both networks are restored.
  void RunStage2(NetworkPair& pair, const EncodedDataset& train, const EncodedDataset& valid);
  // CE training of one network on the given input sides. Each (example,
  // side) combination is one record per epoch. Validation uses
  // `valid_side`.
  void RunSupervised(Network& network, const EncodedDataset& train,
                     const std::vector<InputSide>& sides, const EncodedDataset& valid,
                     InputSide valid_side);

  // Number of records seen in the last supervised epoch.
  std::int64_t last_epoch_records() const { return last_epoch_records_; }
  double best_valid_accuracy() const { return best_valid_accuracy_; }
  int best_epoch() const { return best_epoch_; }

 private:
  std::vector<std::vector<std::size_t>> Batches(std::size_t n, const std::string& stage,
                                                int epoch) const;
  void CheckFinite(double value, const std::string& what, const std::vector<std::size_t>& batch,
                   const EncodedDataset& data) const;

  TrainConfig config_;
  TrainLog log_;
  StepObserver observer_;
  std::int64_t step_ = 0;
  std::int64_t last_epoch_records_ = 0;
  double best_valid_accuracy_ = 0.0;
  int best_epoch_ = -1;
};

// Full pipeline for config.method. CCL runs stage 1 (when enabled) and then
// stage 2, or CE on the inference network with use_ce_instead_of_con.
TrainOutcome TrainMethod(const TrainConfig& config, const EncodedDataset& train,
                         const EncodedDataset& valid, StepObserver observer = {});

// Encoder config for `config` with data-dependent sizes filled in.
EncoderConfig ResolveEncoderConfig(const TrainConfig& config, std::int64_t vocab_size,
                                   std::int64_t n_intents);

}  // namespace rslu

#endif  // RSLU_TRAIN_TRAINER_H_
