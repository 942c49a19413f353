// include/rslu/train/optimizer.h
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

#ifndef RSLU_TRAIN_OPTIMIZER_H_
#define RSLU_TRAIN_OPTIMIZER_H_

#include <cstdint>
#include <vector>

#include "rslu/autodiff/tensor.h"

namespace rslu {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

// Adam with bias correction. Parameters without a gradient are skipped
// entirely, so their moments and values stay as they were.
class Adam {
 public:
  Adam(std::vector<ad::Tensor> params, AdamConfig config);

  void Step();
  void ZeroGrad();
  // L2 norm over all present gradients.
  double GradNorm() const;
  std::int64_t steps() const { return steps_; }
  const AdamConfig& config() const { return config_; }

 private:
  std::vector<ad::Tensor> params_;
  AdamConfig config_;
  std::vector<std::vector<double>> m_, v_;
  std::int64_t steps_ = 0;
};

}  // namespace rslu

#endif  // RSLU_TRAIN_OPTIMIZER_H_
