// include/rslu/train/ablation.h
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

#ifndef RSLU_TRAIN_ABLATION_H_
#define RSLU_TRAIN_ABLATION_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "rslu/data/encoded_dataset.h"
#include "rslu/eval/metrics.h"
#include "rslu/train/config.h"

namespace rslu {

struct AblationCell {
  bool use_con = false;  // inference objective: consistency (true) or CE
  bool use_sel = false;
  bool use_utt = false;

  // e.g. "con+sel+utt", "ce".
  std::string Name() const;
};

// {ce, con} x {none, sel, utt, sel+utt}: eight cells, CE rows first.
std::vector<AblationCell> AblationCells();

// TrainConfig for one cell: method ccl with the cell's stage-1 losses
// (stage 1 skipped when neither is on) and stage-2 objective. Everything
// else, the seed included, comes from `base`.
TrainConfig CellConfig(const TrainConfig& base, const AblationCell& cell);

struct AblationRow {
  AblationCell cell;
  MetricsReport clean;
  MetricsReport noisy;
  double best_valid_accuracy = 0.0;
};

std::vector<AblationRow> RunAblationGrid(const TrainConfig& base, const EncodedDataset& train,
                                         const EncodedDataset& valid, const EncodedDataset& test,
                                         const IntentLabelSet& labels);

nlohmann::json AblationToJson(const std::vector<AblationRow>& rows);
std::string AblationToTable(const std::vector<AblationRow>& rows);

}  // namespace rslu

#endif  // RSLU_TRAIN_ABLATION_H_
