// src/eval/analysis.cc
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

#include "rslu/eval/analysis.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "rslu/common/io.h"

namespace rslu {

namespace {

std::vector<std::vector<double>> Rows(const ad::Tensor& t) {
  std::vector<std::vector<double>> out;
  const std::int64_t n = t.dim(0), d = t.dim(1);
  const auto v = t.values();
  for (std::int64_t r = 0; r < n; ++r) out.emplace_back(v.begin() + r * d, v.begin() + (r + 1) * d);
  return out;
}

void Normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::max(std::sqrt(s), 1e-12);
  for (double& v : x) v /= s;
}

SimilarityMap CosineMap(std::vector<std::vector<double>> rows,
                        std::vector<std::vector<double>> cols) {
  SimilarityMap map;
  for (auto& r : rows) Normalize(r);
  for (auto& c : cols) Normalize(c);
  for (const auto& r : rows) {
    for (const auto& c : cols) {
      double dot = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) dot += r[i] * c[i];
      map.values.push_back(std::clamp(dot, -1.0, 1.0));
    }
  }
  return map;
}

}  // namespace

std::vector<std::int64_t> PredictIntents(const Network& network, const EncodedDataset& data,
                                         InputSide side, std::vector<std::vector<double>>* probs,
                                         std::size_t batch_size) {
  std::vector<std::int64_t> out;
  for (std::size_t start = 0; start < data.size(); start += batch_size) {
    std::vector<const TokenSequence*> batch;
    for (std::size_t i = start; i < std::min(data.size(), start + batch_size); ++i) {
      batch.push_back(&data.Input(i, side));
    }
    const IntentDistribution dist = network.Classify(network.Encode(batch));
    const std::int64_t k = dist.probs.dim(1);
    const auto p = dist.probs.values();
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const auto row = p.subspan(b * k, k);
      out.push_back(std::max_element(row.begin(), row.end()) - row.begin());
      if (probs) probs->emplace_back(row.begin(), row.end());
    }
  }
  return out;
}

MetricsReport Evaluate(const Network& network, const EncodedDataset& data, InputSide side,
                       const IntentLabelSet& labels, const std::vector<double>* wer_edges) {
  const std::vector<std::int64_t> pred = PredictIntents(network, data, side);
  MetricsReport report = ComputeMetrics(data.labels(), pred, labels);
  if (wer_edges) {
    std::vector<double> wers;
    std::vector<bool> correct;
    for (std::size_t i = 0; i < data.size(); ++i) {
      wers.push_back(data.PairWer(i));
      correct.push_back(pred[i] == data.label(i));
    }
    report.wer_buckets = BucketByWer(wers, correct, *wer_edges);
  }
  return report;
}

std::vector<WerBucket> WerBucketReport(const Network& network, const EncodedDataset& data,
                                       InputSide side, const std::vector<double>& edges) {
  const std::vector<std::int64_t> pred = PredictIntents(network, data, side);
  std::vector<double> wers;
  std::vector<bool> correct;
  for (std::size_t i = 0; i < data.size(); ++i) {
    wers.push_back(data.PairWer(i));
    correct.push_back(pred[i] == data.label(i));
  }
  return BucketByWer(wers, correct, edges);
}

nlohmann::json SimilarityMap::ToJson() const {
  nlohmann::json j;
  j["id"] = id;
  j["rows"] = row_labels;
  j["cols"] = col_labels;
  nlohmann::json m = nlohmann::json::array();
  for (std::size_t r = 0; r < rows(); ++r) {
    m.push_back(std::vector<double>(values.begin() + r * cols(), values.begin() + (r + 1) * cols()));
  }
  j["matrix"] = m;
  return j;
}

std::string SimilarityMap::RenderText() const {
  static const char kRamp[] = " .:-=+*#%@";
  std::size_t width = 0;
  for (const std::string& l : row_labels) width = std::max(width, l.size());
  std::string out;
  for (std::size_t c = 0; c < cols(); ++c) {
    out += std::string(width + 1, ' ') + std::string(c, '|') + col_labels[c] + "\n";
  }
  for (std::size_t r = 0; r < rows(); ++r) {
    out += row_labels[r] + std::string(width + 1 - row_labels[r].size(), ' ');
    for (std::size_t c = 0; c < cols(); ++c) {
      const double x = (at(r, c) + 1.0) / 2.0;
      out.push_back(kRamp[std::clamp(static_cast<int>(x * 10.0), 0, 9)]);
    }
    out += "\n";
  }
  return out;
}

SimilarityMap TokenSimilarityMap(const Network& reference, const Network& inference,
                                 const EncodedDataset& data, std::size_t index) {
  const TokenSequence& noisy = data.Noisy(index);
  const TokenSequence& clean = data.Clean(index);
  SimilarityMap map = CosineMap(Rows(inference.Encode({&noisy}).TokenRows()),
                                Rows(reference.Encode({&clean}).TokenRows()));
  map.id = data.id(index);
  map.row_labels = noisy.tokens;
  map.col_labels = clean.tokens;
  return map;
}

SimilarityMap UtteranceSimilarityMap(const Network& reference, const Network& inference,
                                     const EncodedDataset& data,
                                     const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw ContractError("utterance map needs at least one pair");
  std::vector<const TokenSequence*> noisy, clean;
  SimilarityMap labels;
  for (std::size_t i : indices) {
    noisy.push_back(&data.Noisy(i));
    clean.push_back(&data.Clean(i));
    labels.row_labels.push_back(data.id(i));
  }
  SimilarityMap map = CosineMap(Rows(inference.Encode(noisy).ClsRows()),
                                Rows(reference.Encode(clean).ClsRows()));
  map.id = "utterance";
  map.row_labels = labels.row_labels;
  map.col_labels = labels.row_labels;
  return map;
}

AlignedContrast AlignedCellContrast(const SimilarityMap& map, const Alignment& alignment) {
  std::set<std::pair<std::int64_t, std::int64_t>> aligned;
  for (const auto& [c, n] : alignment.positive_pairs) aligned.insert({n, c});
  AlignedContrast out;
  double sum_a = 0.0, sum_o = 0.0;
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (aligned.count({static_cast<std::int64_t>(r), static_cast<std::int64_t>(c)})) {
        sum_a += map.at(r, c);
        ++out.n_aligned;
      } else {
        sum_o += map.at(r, c);
        ++out.n_other;
      }
    }
  }
  if (out.n_aligned) out.aligned_mean = sum_a / out.n_aligned;
  if (out.n_other) out.other_mean = sum_o / out.n_other;
  return out;
}

EmbeddingLevel ParseEmbeddingLevel(const std::string& name) {
  if (name == "token") return EmbeddingLevel::kToken;
  if (name == "utterance") return EmbeddingLevel::kUtterance;
  throw ConfigError("level must be token or utterance, got '" + name + "'");
}

std::string EmbeddingsJsonl(const Network& network, const EncodedDataset& data, InputSide side,
                            EmbeddingLevel level) {
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const TokenSequence& seq = data.Input(i, side);
    const BatchEncoding enc = network.Encode({&seq});
    if (level == EmbeddingLevel::kUtterance) {
      nlohmann::json j = {{"id", data.id(i)}, {"side", InputSideName(side)}, {"tag", "[CLS]"},
                          {"position", 0}, {"vector", Rows(enc.ClsRows())[0]}};
      out += j.dump() + "\n";
      continue;
    }
    const auto rows = Rows(enc.TokenRows());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      nlohmann::json j = {{"id", data.id(i)}, {"side", InputSideName(side)},
                          {"tag", seq.tokens[t]}, {"position", t + 1}, {"vector", rows[t]}};
      out += j.dump() + "\n";
    }
  }
  return out;
}

void ExportEmbeddings(const Network& network, const EncodedDataset& data, InputSide side,
                      EmbeddingLevel level, const std::filesystem::path& path) {
  WriteFileAtomic(path, EmbeddingsJsonl(network, data, side, level));
}

std::vector<RankedIntent> TopKDistribution(const Network& network, const EncodedDataset& data,
                                           std::size_t index, InputSide side,
                                           const IntentLabelSet& labels, std::size_t k) {
  if (k < 1 || k > labels.size()) {
    throw ContractError("k must lie in [1, " + std::to_string(labels.size()) + "]");
  }
  const TokenSequence& seq = data.Input(index, side);
  const ad::Tensor probs = network.Classify(network.Encode({&seq})).probs;
  std::vector<RankedIntent> all;
  for (std::int64_t c = 0; c < probs.dim(1); ++c) {
    all.push_back({labels.name(static_cast<std::size_t>(c)), c, probs.at(c)});
  }
  std::stable_sort(all.begin(), all.end(), [](const RankedIntent& a, const RankedIntent& b) {
    return a.prob > b.prob;
  });
  all.resize(k);
  return all;
}

}  // namespace rslu
