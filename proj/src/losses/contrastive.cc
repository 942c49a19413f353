// src/losses/contrastive.cc
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

#include "rslu/losses/contrastive.h"

#include <string>

#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"

namespace rslu {

using ad::Tensor;

void ContrastiveConfig::Validate() const {
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (!(lambda_ctr >= 0.0 && lambda_ctr <= 1.0)) {
    throw ConfigError("lambda_ctr must lie in [0, 1]");
  }
  if (n_neg_max < kUncapped) throw ConfigError("n_neg_max must be -1 or non-negative");
}

nlohmann::json ContrastiveConfig::ToJson() const {
  return {{"tau", tau},
          {"lambda_ctr", lambda_ctr},
          {"n_neg_max", n_neg_max},
          {"positive_in_denominator", positive_in_denominator}};
}

ContrastiveConfig ContrastiveConfig::FromJson(const nlohmann::json& j) {
  ContrastiveConfig c;
  try {
    c.tau = j.value("tau", c.tau);
    c.lambda_ctr = j.value("lambda_ctr", c.lambda_ctr);
    c.n_neg_max = j.value("n_neg_max", c.n_neg_max);
    c.positive_in_denominator = j.value("positive_in_denominator", c.positive_in_denominator);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("contrastive config: ") + e.what());
  }
  c.Validate();
  return c;
}

Tensor InfoNce(const Tensor& h, const Tensor& h_prime, const PairIndex& index, double tau,
               bool positive_in_denominator) {
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (index.anchors.empty()) throw ContractError("contrastive loss needs at least one positive pair");
  if (index.positives.size() != index.size() || index.negatives.size() != index.size()) {
    throw ContractError("pair index lists disagree in length");
  }
  std::vector<std::vector<std::int64_t>> subsets(index.size());
  for (std::size_t r = 0; r < index.size(); ++r) {
    if (positive_in_denominator) subsets[r].push_back(index.positives[r]);
    subsets[r].insert(subsets[r].end(), index.negatives[r].begin(), index.negatives[r].end());
    if (subsets[r].empty()) {
      throw ContractError("anchor " + std::to_string(index.anchors[r]) +
                          " has an empty denominator");
    }
  }
  Tensor anchors = ad::GatherRows(h, index.anchors);
  Tensor scores = ad::Scale(ad::MatMul(anchors, ad::Transpose(h_prime)), 1.0 / tau);
  return ad::Neg(ad::Mean(ad::LogSoftmaxOverSubsets(scores, subsets, index.positives)));
}

Tensor SelectiveTokenLoss(const Tensor& clean_tokens, const Tensor& noisy_tokens,
                          const PairIndex& cross, const PairIndex& self,
                          const ContrastiveConfig& config) {
  Tensor zc = ad::L2NormalizeRows(clean_tokens);
  Tensor zn = ad::L2NormalizeRows(noisy_tokens);
  Tensor self_term = InfoNce(zc, zc, self, config.tau, config.positive_in_denominator);
  // A batch whose noisy side is entirely empty has no aligned pairs.
  if (cross.anchors.empty()) return self_term;
  return InfoNce(zc, zn, cross, config.tau, config.positive_in_denominator) + self_term;
}

Tensor UtteranceLoss(const Tensor& clean_cls, const Tensor& noisy_cls,
                     const ContrastiveConfig& config) {
  return InfoNce(ad::L2NormalizeRows(clean_cls), ad::L2NormalizeRows(noisy_cls),
                 DiagonalPairIndex(clean_cls.dim(0)), config.tau,
                 config.positive_in_denominator);
}

Tensor CombinedContrastiveLoss(const Tensor& l_sel, const Tensor& l_utt, double lambda_ctr) {
  if (!(lambda_ctr >= 0.0 && lambda_ctr <= 1.0)) {
    throw ConfigError("lambda_ctr must lie in [0, 1]");
  }
  return ad::Scale(l_sel, lambda_ctr) + ad::Scale(l_utt, 1.0 - lambda_ctr);
}

}  // namespace rslu
