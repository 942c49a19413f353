// include/rslu/autodiff/ops.h
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

#ifndef RSLU_AUTODIFF_OPS_H_
#define RSLU_AUTODIFF_OPS_H_

#include <cstdint>
#include <vector>

#include "rslu/autodiff/tensor.h"
#include "rslu/common/random.h"

namespace rslu::ad {

// Binary operands must have identical shapes, or one of them must be a rank-0
// scalar. Anything else is a DimensionError; use TileRows/Reshape explicitly.
enum class ElementwiseOp { kAdd, kSub, kMul, kDiv, kExp, kLog, kSquare, kNegate };

Tensor Elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b);
Tensor Elementwise(ElementwiseOp op, const Tensor& a);

Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Div(const Tensor& a, const Tensor& b);

Tensor Exp(const Tensor& a);
// Throws DomainError carrying the first offending index if any entry <= 0.
Tensor Log(const Tensor& a);
Tensor Square(const Tensor& a);
Tensor Neg(const Tensor& a);
// Throws DomainError for negative entries.
Tensor Sqrt(const Tensor& a);
// Exact (erf-based) GELU.
Tensor Gelu(const Tensor& a);
Tensor Scale(const Tensor& a, double s);
Tensor AddScalar(const Tensor& a, double s);
// max(a, floor); the gradient passes only where a > floor.
Tensor ClampMin(const Tensor& a, double floor);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return Add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return Sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return Mul(a, b); }
inline Tensor operator/(const Tensor& a, const Tensor& b) { return Div(a, b); }
inline Tensor operator-(const Tensor& a) { return Neg(a); }
inline Tensor operator*(const Tensor& a, double s) { return Scale(a, s); }
inline Tensor operator*(double s, const Tensor& a) { return Scale(a, s); }
inline Tensor operator+(const Tensor& a, double s) { return AddScalar(a, s); }

// [m x k] . [k x n] -> [m x n].
Tensor MatMul(const Tensor& a, const Tensor& b);
Tensor Transpose(const Tensor& a);

// Reductions drop the reduced axis. Negative axes count from the end.
Tensor Sum(const Tensor& a);
Tensor Sum(const Tensor& a, int axis);
Tensor Mean(const Tensor& a);
Tensor Mean(const Tensor& a, int axis);
Tensor Max(const Tensor& a, int axis);

// Shift-stabilized by the max along `axis`.
Tensor Softmax(const Tensor& a, int axis);
Tensor LogSoftmax(const Tensor& a, int axis);
// Normalizes to zero mean / unit variance along `axis`; no affine part.
Tensor LayerNorm(const Tensor& a, int axis = -1, double eps = 1e-5);

// Dispatcher over the axis-wise ops above. kGelu is elementwise; the axis is
// still validated so callers get uniform error behavior.
enum class AxisOp { kSum, kMean, kMax, kSoftmax, kLogSoftmax, kLayerNorm, kGelu };
Tensor ApplyAxisOp(AxisOp op, const Tensor& a, int axis);

Tensor Reshape(const Tensor& a, const Shape& shape);
// [d] or [1 x d] -> [n x d].
Tensor TileRows(const Tensor& row, std::int64_t n);
Tensor SliceRows(const Tensor& a, std::int64_t begin, std::int64_t count);
Tensor ConcatRows(const std::vector<Tensor>& parts);
// out[r] = a[indices[r]], or a zero row when indices[r] < 0.
Tensor GatherRows(const Tensor& a, const std::vector<std::int64_t>& indices);
// out[r] = a[r, cols[r]].
Tensor PickPerRow(const Tensor& a, const std::vector<std::int64_t>& cols);

// Each row r of `scores` yields scores[r, target[r]] - logsumexp over the
// columns listed in subsets[r]. `target[r]` need not belong to the subset.
Tensor LogSoftmaxOverSubsets(const Tensor& scores,
                             const std::vector<std::vector<std::int64_t>>& subsets,
                             const std::vector<std::int64_t>& target);

// Each row divided by max(||row||_2, eps).
Tensor L2NormalizeRows(const Tensor& a, double eps = 1e-12);

// Inverted dropout; rate 0 returns `a` unchanged.
Tensor Dropout(const Tensor& a, double rate, Rng& rng);

}  // namespace rslu::ad

#endif  // RSLU_AUTODIFF_OPS_H_
