// include/rslu/autodiff/attention.h
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

#ifndef RSLU_AUTODIFF_ATTENTION_H_
#define RSLU_AUTODIFF_ATTENTION_H_

#include <cstdint>
#include <vector>

#include "rslu/autodiff/tensor.h"

namespace rslu::ad {

// A contiguous block of rows in a packed [N x d] activation matrix that
// attends only within itself. Keys at positions >= valid_keys are masked out
// (they get exactly zero weight from every query).
struct AttentionSegment {
  std::int64_t offset = 0;
  std::int64_t length = 0;
  std::int64_t valid_keys = 0;
};

// Scaled dot-product self-attention with `n_heads` heads over packed
// sequences. q, k, v are [N x d] with d divisible by n_heads; head h uses
// columns [h*d/n_heads, (h+1)*d/n_heads). Rows outside every segment come out
// as zeros. If `weights` is non-null it receives the attention matrices,
// segment-major then head-major, each length x length row-major.
Tensor SegmentSelfAttention(const Tensor& q, const Tensor& k, const Tensor& v,
                            const std::vector<AttentionSegment>& segments,
                            int n_heads, std::vector<double>* weights = nullptr);

}  // namespace rslu::ad

#endif  // RSLU_AUTODIFF_ATTENTION_H_
