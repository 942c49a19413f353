// include/rslu/eval/analysis.h
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

#ifndef RSLU_EVAL_ANALYSIS_H_
#define RSLU_EVAL_ANALYSIS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rslu/align/alignment.h"
#include "rslu/data/encoded_dataset.h"
#include "rslu/encoder/network.h"
#include "rslu/eval/metrics.h"

namespace rslu {

// Argmax predictions in dataset order, evaluated without dropout. When
// `probs` is given it receives one distribution per example.
std::vector<std::int64_t> PredictIntents(const Network& network, const EncodedDataset& data,
                                         InputSide side,
                                         std::vector<std::vector<double>>* probs = nullptr,
                                         std::size_t batch_size = 64);

// Accuracy / macro-F1 on `side`. Buckets are filled only when `wer_edges` is
// given; that reads per-pair WERs, i.e. the noisy side.
MetricsReport Evaluate(const Network& network, const EncodedDataset& data, InputSide side,
                       const IntentLabelSet& labels,
                       const std::vector<double>* wer_edges = nullptr);

std::vector<WerBucket> WerBucketReport(const Network& network, const EncodedDataset& data,
                                       InputSide side, const std::vector<double>& edges);

// Cosine similarities; rows are noisy-side items, columns clean-side items.
struct SimilarityMap {
  std::string id;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> values;  // row-major

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }
  double at(std::size_t r, std::size_t c) const { return values.at(r * cols() + c); }
  nlohmann::json ToJson() const;
  // One character per cell on a ten-step ramp from -1 to 1.
  std::string RenderText() const;
};

// Noisy tokens through the inference network against clean tokens through
// the reference network, CLS and PAD excluded.
SimilarityMap TokenSimilarityMap(const Network& reference, const Network& inference,
                                 const EncodedDataset& data, std::size_t index);

// CLS representations for a set of pairs: n x n.
SimilarityMap UtteranceSimilarityMap(const Network& reference, const Network& inference,
                                     const EncodedDataset& data,
                                     const std::vector<std::size_t>& indices);

struct AlignedContrast {
  double aligned_mean = 0.0;
  double other_mean = 0.0;
  std::int64_t n_aligned = 0;
  std::int64_t n_other = 0;
};

// Splits a token map's cells into aligned (positive-pair) cells and the rest.
AlignedContrast AlignedCellContrast(const SimilarityMap& map, const Alignment& alignment);

enum class EmbeddingLevel { kToken, kUtterance };
EmbeddingLevel ParseEmbeddingLevel(const std::string& name);

// One JSON object per line: {"id", "side", "tag", "position", "vector"}.
std::string EmbeddingsJsonl(const Network& network, const EncodedDataset& data, InputSide side,
                            EmbeddingLevel level);
void ExportEmbeddings(const Network& network, const EncodedDataset& data, InputSide side,
                      EmbeddingLevel level, const std::filesystem::path& path);

struct RankedIntent {
  std::string intent;
  std::int64_t index = 0;
  double prob = 0.0;
};

// Highest-probability intents, descending, ties by class index. Throws
// ContractError unless 1 <= k <= n_intents.
std::vector<RankedIntent> TopKDistribution(const Network& network, const EncodedDataset& data,
                                           std::size_t index, InputSide side,
                                           const IntentLabelSet& labels, std::size_t k);

}  // namespace rslu

#endif  // RSLU_EVAL_ANALYSIS_H_
