// include/rslu/losses/consistency.h
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

#ifndef RSLU_LOSSES_CONSISTENCY_H_
#define RSLU_LOSSES_CONSISTENCY_H_

#include <cstdint>
#include <vector>

#include "rslu/autodiff/tensor.h"

namespace rslu {

inline constexpr double kProbabilityFloor = 1e-12;

// lambda * mean((v_c - v_hat)^2) + (1 - lambda) * mean((log p_c - log p_hat)^2),
// means taken over all entries of the [B x n] inputs. v_c and p_c are
// detached, so only the v_hat / p_hat side receives gradient. Probabilities
// are floored at kProbabilityFloor before the log.
ad::Tensor ConsistencyLoss(const ad::Tensor& v_c, const ad::Tensor& v_hat,
                           const ad::Tensor& p_c, const ad::Tensor& p_hat, double lambda_con);

// Batch mean of -log softmax(logits)[label]. Throws ContractError for a
// label outside [0, n_intents).
ad::Tensor CrossEntropy(const ad::Tensor& logits, const std::vector<std::int64_t>& labels);

}  // namespace rslu

#endif  // RSLU_LOSSES_CONSISTENCY_H_
