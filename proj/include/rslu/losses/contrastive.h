// include/rslu/losses/contrastive.h
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

#ifndef RSLU_LOSSES_CONTRASTIVE_H_
#define RSLU_LOSSES_CONTRASTIVE_H_

#include <cstdint>

#include <json.hpp>

#include "rslu/align/pair_index.h"
#include "rslu/autodiff/tensor.h"

namespace rslu {

struct ContrastiveConfig {
  double tau = 0.07;
  double lambda_ctr = 0.7;
  std::int64_t n_neg_max = 256;  // kUncapped for all negatives
  // Include the positive in the softmax denominator. Turning this off gives
  // the literal "negatives only" reading, which can go below zero.
  bool positive_in_denominator = true;

  void Validate() const;
  nlohmann::json ToJson() const;
  static ContrastiveConfig FromJson(const nlohmann::json& j);
};

// Scalar values of every objective; undefined tensors were not computed.
struct LossBundle {
  ad::Tensor l_sel, l_utt, l_ctr, l_con, l_ce;
};

// -1/|P| sum_i log( exp(h_i . h'_p(i) / tau) / sum_{j in D(i)} exp(h_i . h'_j / tau) )
// with D(i) = negatives(i), plus the positive when positive_in_denominator.
// Rows of h are indexed by index.anchors, rows of h_prime by positives and
// negatives. No normalization is applied here.
ad::Tensor InfoNce(const ad::Tensor& h, const ad::Tensor& h_prime, const PairIndex& index,
                   double tau, bool positive_in_denominator = true);

// Token-level loss over L2-normalized token rows: the clean/noisy term on
// `cross` plus the clean/clean term on `self` (every clean token is its own
// positive against other clean tokens of the batch). An empty `cross` drops
// the first term.
ad::Tensor SelectiveTokenLoss(const ad::Tensor& clean_tokens, const ad::Tensor& noisy_tokens,
                              const PairIndex& cross, const PairIndex& self,
                              const ContrastiveConfig& config);

// Utterance-level loss over L2-normalized CLS rows; positives on the
// diagonal, every other row of the batch is a negative.
ad::Tensor UtteranceLoss(const ad::Tensor& clean_cls, const ad::Tensor& noisy_cls,
                         const ContrastiveConfig& config);

// lambda * l_sel + (1 - lambda) * l_utt.
ad::Tensor CombinedContrastiveLoss(const ad::Tensor& l_sel, const ad::Tensor& l_utt,
                                   double lambda_ctr);

}  // namespace rslu

#endif  // RSLU_LOSSES_CONTRASTIVE_H_
