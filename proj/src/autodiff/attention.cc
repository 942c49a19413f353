// src/autodiff/attention.cc
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

#include "rslu/autodiff/attention.h"

#include <Eigen/Core>

#include <cmath>
#include <string>

#include "rslu/common/errors.h"

namespace rslu::ad {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Stride = Eigen::OuterStride<>;
using ConstBlock = Eigen::Map<const RowMajor, 0, Stride>;
using MutBlock = Eigen::Map<RowMajor, 0, Stride>;

}  // namespace

Tensor SegmentSelfAttention(const Tensor& q, const Tensor& k, const Tensor& v,
                            const std::vector<AttentionSegment>& segments,
                            int n_heads, std::vector<double>* weights) {
  if (q.rank() != 2 || q.shape() != k.shape() || q.shape() != v.shape()) {
    throw DimensionError("attention needs equal [N x d] q, k, v");
  }
  const std::int64_t rows = q.dim(0), d = q.dim(1);
  if (n_heads < 1 || d % n_heads != 0) {
    throw DimensionError("model width " + std::to_string(d) +
                         " not divisible by heads " + std::to_string(n_heads));
  }
  const std::int64_t dh = d / n_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  for (const AttentionSegment& s : segments) {
    if (s.offset < 0 || s.length < 1 || s.offset + s.length > rows ||
        s.valid_keys < 1 || s.valid_keys > s.length) {
      throw DimensionError("bad attention segment at offset " + std::to_string(s.offset));
    }
  }

  std::vector<double> out(static_cast<std::size_t>(rows * d), 0.0);
  // Attention probabilities per (segment, head), kept for the backward pass.
  std::vector<RowMajor> probs;
  probs.reserve(segments.size() * n_heads);
  const double* qv = q.values().data();
  const double* kv = k.values().data();
  const double* vv = v.values().data();
  for (const AttentionSegment& s : segments) {
    for (int h = 0; h < n_heads; ++h) {
      const std::int64_t base = s.offset * d + h * dh;
      ConstBlock qs(qv + base, s.length, dh, Stride(d));
      ConstBlock ks(kv + base, s.valid_keys, dh, Stride(d));
      ConstBlock vs(vv + base, s.valid_keys, dh, Stride(d));
      RowMajor p = RowMajor::Zero(s.length, s.length);
      RowMajor scores = (qs * ks.transpose()) * scale;
      for (std::int64_t i = 0; i < s.length; ++i) {
        const double mx = scores.row(i).maxCoeff();
        double z = 0.0;
        for (std::int64_t j = 0; j < s.valid_keys; ++j) {
          p(i, j) = std::exp(scores(i, j) - mx);
          z += p(i, j);
        }
        p.row(i) /= z;
      }
      MutBlock(out.data() + base, s.length, dh, Stride(d)).noalias() =
          p.leftCols(s.valid_keys) * vs;
      if (weights) weights->insert(weights->end(), p.data(), p.data() + p.size());
      probs.push_back(std::move(p));
    }
  }

  return Tensor::MakeResult(
      {rows, d}, std::move(out), {q, k, v},
      [segments, n_heads, d, dh, scale, probs = std::move(probs)](internal::Node& self) {
        auto grad_of = [&](std::size_t i) -> double* {
          internal::Node& p = *self.parents[i];
          return p.requires_grad ? p.GradBuffer().data() : nullptr;
        };
        double* gq = grad_of(0);
        double* gk = grad_of(1);
        double* gv = grad_of(2);
        const double* qv = self.parents[0]->value.data();
        const double* kv = self.parents[1]->value.data();
        const double* vv = self.parents[2]->value.data();
        std::size_t idx = 0;
        for (const AttentionSegment& s : segments) {
          for (int h = 0; h < n_heads; ++h, ++idx) {
            const std::int64_t base = s.offset * d + h * dh;
            const auto p = probs[idx].leftCols(s.valid_keys);
            ConstBlock go(self.grad.data() + base, s.length, dh, Stride(d));
            ConstBlock qs(qv + base, s.length, dh, Stride(d));
            ConstBlock ks(kv + base, s.valid_keys, dh, Stride(d));
            ConstBlock vs(vv + base, s.valid_keys, dh, Stride(d));
            if (gv) {
              MutBlock(gv + base, s.valid_keys, dh, Stride(d)).noalias() += p.transpose() * go;
            }
            if (!gq && !gk) continue;
            RowMajor dp = go * vs.transpose();
            RowMajor ds = p.cwiseProduct(dp);
            for (std::int64_t i = 0; i < s.length; ++i) {
              const double row_dot = ds.row(i).sum();
              ds.row(i) = (p.row(i).array() * (dp.row(i).array() - row_dot)).matrix();
            }
            if (gq) {
              MutBlock(gq + base, s.length, dh, Stride(d)).noalias() += (ds * ks) * scale;
            }
            if (gk) {
              MutBlock(gk + base, s.valid_keys, dh, Stride(d)).noalias() +=
                  (ds.transpose() * qs) * scale;
            }
          }
        }
      });
}

}  // namespace rslu::ad
