// src/train/ablation.cc
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

#include "rslu/train/ablation.h"

#include <cstdio>

#include "rslu/eval/analysis.h"
#include "rslu/train/trainer.h"

namespace rslu {

std::string AblationCell::Name() const {
  std::string name = use_con ? "con" : "ce";
  if (use_sel) name += "+sel";
  if (use_utt) name += "+utt";
  return name;
}

std::vector<AblationCell> AblationCells() {
  std::vector<AblationCell> cells;
  for (bool con : {false, true}) {
    cells.push_back({con, false, false});
    cells.push_back({con, true, false});
    cells.push_back({con, false, true});
    cells.push_back({con, true, true});
  }
  return cells;
}

TrainConfig CellConfig(const TrainConfig& base, const AblationCell& cell) {
  TrainConfig c = base;
  c.method = Method::kCcl;
  c.stage1.use_sel = cell.use_sel;
  c.stage1.use_utt = cell.use_utt;
  c.stage2.use_ce_instead_of_con = !cell.use_con;
  return c;
}

std::vector<AblationRow> RunAblationGrid(const TrainConfig& base, const EncodedDataset& train,
                                         const EncodedDataset& valid, const EncodedDataset& test,
                                         const IntentLabelSet& labels) {
  std::vector<AblationRow> rows;
  for (const AblationCell& cell : AblationCells()) {
    const TrainOutcome outcome = TrainMethod(CellConfig(base, cell), train, valid);
    AblationRow row;
    row.cell = cell;
    row.clean = Evaluate(outcome.inference(), test, InputSide::kClean, labels);
    row.noisy = Evaluate(outcome.inference(), test, InputSide::kNoisy, labels);
    row.best_valid_accuracy = outcome.best_valid_accuracy;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json AblationToJson(const std::vector<AblationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const AblationRow& r : rows) {
    out.push_back({{"cell", r.cell.Name()},
                   {"objective", r.cell.use_con ? "con" : "ce"},
                   {"sel", r.cell.use_sel},
                   {"utt", r.cell.use_utt},
                   {"clean", r.clean.ToJson()},
                   {"noisy", r.noisy.ToJson()},
                   {"best_valid_accuracy", r.best_valid_accuracy}});
  }
  return out;
}

std::string AblationToTable(const std::vector<AblationRow>& rows) {
  std::string out = "cell           clean_acc  clean_f1  noisy_acc  noisy_f1\n";
  char line[128];
  for (const AblationRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-14s %9.2f %9.2f %10.2f %9.2f\n", r.cell.Name().c_str(),
                  100.0 * r.clean.accuracy, 100.0 * r.clean.macro_f1, 100.0 * r.noisy.accuracy,
                  100.0 * r.noisy.macro_f1);
    out += line;
  }
  return out;
}

}  // namespace rslu
