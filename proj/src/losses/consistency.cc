// src/losses/consistency.cc
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

#include "rslu/losses/consistency.h"

#include <string>

#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"

namespace rslu {

using ad::Tensor;

Tensor ConsistencyLoss(const Tensor& v_c, const Tensor& v_hat, const Tensor& p_c,
                       const Tensor& p_hat, double lambda_con) {
  if (!(lambda_con >= 0.0 && lambda_con <= 1.0)) {
    throw ConfigError("lambda_con must lie in [0, 1]");
  }
  if (v_c.shape() != v_hat.shape()) {
    throw DimensionError("projection shapes " + ad::ShapeToString(v_c.shape()) + " and " +
                         ad::ShapeToString(v_hat.shape()) + " differ");
  }
  Tensor feature = ad::Mean(ad::Square(v_c.Detach() - v_hat));
  Tensor log_c = ad::Log(ad::ClampMin(p_c.Detach(), kProbabilityFloor));
  Tensor log_hat = ad::Log(ad::ClampMin(p_hat, kProbabilityFloor));
  Tensor distribution = ad::Mean(ad::Square(log_c - log_hat));
  return ad::Scale(feature, lambda_con) + ad::Scale(distribution, 1.0 - lambda_con);
}

Tensor CrossEntropy(const Tensor& logits, const std::vector<std::int64_t>& labels) {
  if (logits.rank() != 2 || logits.dim(0) != static_cast<std::int64_t>(labels.size())) {
    throw DimensionError("cross entropy needs one label per logit row");
  }
  const std::int64_t k = logits.dim(1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw ContractError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                          " outside [0, " + std::to_string(k) + ")");
    }
  }
  return ad::Neg(ad::Mean(ad::PickPerRow(ad::LogSoftmax(logits, -1), labels)));
}

}  // namespace rslu
