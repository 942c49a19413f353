// src/autodiff/ops.cc
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

#include "rslu/autodiff/ops.h"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rslu/common/errors.h"

namespace rslu::ad {

namespace {

using internal::Node;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

// Gradient buffer of parent k, or nullptr when that parent needs no gradient.
double* ParentGrad(Node& self, std::size_t k) {
  Node& p = *self.parents[k];
  if (!p.requires_grad) return nullptr;
  return p.GradBuffer().data();
}

const std::vector<double>& ParentValue(Node& self, std::size_t k) {
  return self.parents[k]->value;
}

bool IsScalar(const Tensor& t) { return t.rank() == 0; }

struct AxisSplit {
  std::int64_t outer = 1;
  std::int64_t n = 1;
  std::int64_t inner = 1;
  int axis = 0;
  Shape reduced;
};

AxisSplit SplitAxis(const Shape& shape, int axis) {
  int r = static_cast<int>(shape.size());
  if (axis < 0) axis += r;
  if (r == 0 || axis < 0 || axis >= r) {
    throw DimensionError("invalid axis " + std::to_string(axis) + " for shape " +
                         ShapeToString(shape));
  }
  AxisSplit s;
  s.axis = axis;
  for (int i = 0; i < axis; ++i) s.outer *= shape[i];
  s.n = shape[axis];
  for (int i = axis + 1; i < r; ++i) s.inner *= shape[i];
  for (int i = 0; i < r; ++i) {
    if (i != axis) s.reduced.push_back(shape[i]);
  }
  return s;
}

void RequireMatrix(const Tensor& t, const char* what) {
  if (t.rank() != 2) {
    throw DimensionError(std::string(what) + " needs a matrix, got " +
                         ShapeToString(t.shape()));
  }
}

enum class BinaryKind { kAdd, kSub, kMul, kDiv };

Tensor Binary(BinaryKind kind, const Tensor& a, const Tensor& b) {
  const bool a_scalar = IsScalar(a) && !IsScalar(b);
  const bool b_scalar = IsScalar(b) && !IsScalar(a);
  if (!a_scalar && !b_scalar && a.shape() != b.shape()) {
    throw DimensionError("shape mismatch " + ShapeToString(a.shape()) + " vs " +
                         ShapeToString(b.shape()));
  }
  const Shape out_shape = a_scalar ? b.shape() : a.shape();
  const std::size_t n = static_cast<std::size_t>(NumElements(out_shape));
  auto av = a.values();
  auto bv = b.values();
  auto A = [&](std::size_t i) { return a_scalar ? av[0] : av[i]; };
  auto B = [&](std::size_t i) { return b_scalar ? bv[0] : bv[i]; };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case BinaryKind::kAdd: out[i] = A(i) + B(i); break;
      case BinaryKind::kSub: out[i] = A(i) - B(i); break;
      case BinaryKind::kMul: out[i] = A(i) * B(i); break;
      case BinaryKind::kDiv: out[i] = A(i) / B(i); break;
    }
  }
  return Tensor::MakeResult(
      out_shape, std::move(out), {a, b},
      [kind, a_scalar, b_scalar, n](Node& self) {
        const auto& g = self.grad;
        const auto& av = ParentValue(self, 0);
        const auto& bv = ParentValue(self, 1);
        double* ga = ParentGrad(self, 0);
        double* gb = ParentGrad(self, 1);
        for (std::size_t i = 0; i < n; ++i) {
          const double x = a_scalar ? av[0] : av[i];
          const double y = b_scalar ? bv[0] : bv[i];
          double da = 0.0, db = 0.0;
          switch (kind) {
            case BinaryKind::kAdd: da = g[i]; db = g[i]; break;
            case BinaryKind::kSub: da = g[i]; db = -g[i]; break;
            case BinaryKind::kMul: da = g[i] * y; db = g[i] * x; break;
            case BinaryKind::kDiv: da = g[i] / y; db = -g[i] * x / (y * y); break;
          }
          if (ga) ga[a_scalar ? 0 : i] += da;
          if (gb) gb[b_scalar ? 0 : i] += db;
        }
      });
}

// Unary op whose derivative is a function of (input, output).
template <typename Fwd, typename Deriv>
Tensor Unary(const Tensor& a, Fwd fwd, Deriv deriv) {
  auto av = a.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = fwd(av[i]);
  return Tensor::MakeResult(a.shape(), std::move(out), {a},
                            [deriv](Node& self) {
                              const auto& x = ParentValue(self, 0);
                              double* ga = ParentGrad(self, 0);
                              if (!ga) return;
                              for (std::size_t i = 0; i < x.size(); ++i) {
                                ga[i] += self.grad[i] * deriv(x[i], self.value[i]);
                              }
                            });
}

}  // namespace

Tensor Add(const Tensor& a, const Tensor& b) { return Binary(BinaryKind::kAdd, a, b); }
Tensor Sub(const Tensor& a, const Tensor& b) { return Binary(BinaryKind::kSub, a, b); }
Tensor Mul(const Tensor& a, const Tensor& b) { return Binary(BinaryKind::kMul, a, b); }
Tensor Div(const Tensor& a, const Tensor& b) { return Binary(BinaryKind::kDiv, a, b); }

Tensor Exp(const Tensor& a) {
  return Unary(a, [](double x) { return std::exp(x); },
               [](double, double y) { return y; });
}

Tensor Log(const Tensor& a) {
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (!(av[i] > 0.0)) {
      throw DomainError("log of non-positive value " + std::to_string(av[i]), i);
    }
  }
  return Unary(a, [](double x) { return std::log(x); },
               [](double x, double) { return 1.0 / x; });
}

Tensor Square(const Tensor& a) {
  return Unary(a, [](double x) { return x * x; },
               [](double x, double) { return 2.0 * x; });
}

Tensor Neg(const Tensor& a) {
  return Unary(a, [](double x) { return -x; }, [](double, double) { return -1.0; });
}

Tensor Sqrt(const Tensor& a) {
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] < 0.0) {
      throw DomainError("sqrt of negative value " + std::to_string(av[i]), i);
    }
  }
  return Unary(a, [](double x) { return std::sqrt(x); },
               [](double, double y) { return 0.5 / y; });
}

Tensor Gelu(const Tensor& a) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  return Unary(
      a, [](double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); },
      [kInvSqrt2Pi](double x, double) {
        const double cdf = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
        const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
        return cdf + x * pdf;
      });
}

Tensor Scale(const Tensor& a, double s) {
  return Unary(a, [s](double x) { return s * x; }, [s](double, double) { return s; });
}

Tensor AddScalar(const Tensor& a, double s) {
  return Unary(a, [s](double x) { return x + s; }, [](double, double) { return 1.0; });
}

Tensor ClampMin(const Tensor& a, double floor) {
  return Unary(a, [floor](double x) { return std::max(x, floor); },
               [floor](double x, double) { return x > floor ? 1.0 : 0.0; });
}

Tensor Elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b) {
  switch (op) {
    case ElementwiseOp::kAdd: return Add(a, b);
    case ElementwiseOp::kSub: return Sub(a, b);
    case ElementwiseOp::kMul: return Mul(a, b);
    case ElementwiseOp::kDiv: return Div(a, b);
    default: throw ContractError("unary elementwise op given two operands");
  }
}

Tensor Elementwise(ElementwiseOp op, const Tensor& a) {
  switch (op) {
    case ElementwiseOp::kExp: return Exp(a);
    case ElementwiseOp::kLog: return Log(a);
    case ElementwiseOp::kSquare: return Square(a);
    case ElementwiseOp::kNegate: return Neg(a);
    default: throw ContractError("binary elementwise op given one operand");
  }
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireMatrix(a, "matmul");
  RequireMatrix(b, "matmul");
  const std::int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) {
    throw DimensionError("matmul inner dimensions differ: " +
                         ShapeToString(a.shape()) + " . " + ShapeToString(b.shape()));
  }
  std::vector<double> out(static_cast<std::size_t>(m * n));
  MutMap(out.data(), m, n).noalias() =
      ConstMap(a.values().data(), m, k) * ConstMap(b.values().data(), k, n);
  return Tensor::MakeResult({m, n}, std::move(out), {a, b}, [m, k, n](Node& self) {
    ConstMap g(self.grad.data(), m, n);
    if (double* ga = ParentGrad(self, 0)) {
      MutMap(ga, m, k).noalias() += g * ConstMap(ParentValue(self, 1).data(), k, n).transpose();
    }
    if (double* gb = ParentGrad(self, 1)) {
      MutMap(gb, k, n).noalias() += ConstMap(ParentValue(self, 0).data(), m, k).transpose() * g;
    }
  });
}

Tensor Transpose(const Tensor& a) {
  RequireMatrix(a, "transpose");
  const std::int64_t m = a.dim(0), n = a.dim(1);
  std::vector<double> out(static_cast<std::size_t>(m * n));
  MutMap(out.data(), n, m) = ConstMap(a.values().data(), m, n).transpose();
  return Tensor::MakeResult({n, m}, std::move(out), {a}, [m, n](Node& self) {
    if (double* ga = ParentGrad(self, 0)) {
      MutMap(ga, m, n) += ConstMap(self.grad.data(), n, m).transpose();
    }
  });
}

Tensor Sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.values()) s += v;
  return Tensor::MakeResult({}, {s}, {a}, [](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    const std::size_t n = ParentValue(self, 0).size();
    for (std::size_t i = 0; i < n; ++i) ga[i] += self.grad[0];
  });
}

Tensor Mean(const Tensor& a) {
  if (a.numel() == 0) throw DimensionError("mean of an empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<double>(a.numel()));
}

Tensor Sum(const Tensor& a, int axis) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  auto av = a.values();
  std::vector<double> out(static_cast<std::size_t>(s.outer * s.inner), 0.0);
  for (std::int64_t o = 0; o < s.outer; ++o)
    for (std::int64_t j = 0; j < s.n; ++j)
      for (std::int64_t i = 0; i < s.inner; ++i)
        out[o * s.inner + i] += av[(o * s.n + j) * s.inner + i];
  return Tensor::MakeResult(s.reduced, std::move(out), {a}, [s](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    for (std::int64_t o = 0; o < s.outer; ++o)
      for (std::int64_t j = 0; j < s.n; ++j)
        for (std::int64_t i = 0; i < s.inner; ++i)
          ga[(o * s.n + j) * s.inner + i] += self.grad[o * s.inner + i];
  });
}

Tensor Mean(const Tensor& a, int axis) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  if (s.n == 0) throw DimensionError("mean over an empty axis");
  return Scale(Sum(a, axis), 1.0 / static_cast<double>(s.n));
}

Tensor Max(const Tensor& a, int axis) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  if (s.n == 0) throw DimensionError("max over an empty axis");
  auto av = a.values();
  std::vector<double> out(static_cast<std::size_t>(s.outer * s.inner));
  std::vector<std::int64_t> arg(out.size());
  for (std::int64_t o = 0; o < s.outer; ++o)
    for (std::int64_t i = 0; i < s.inner; ++i) {
      std::int64_t best = 0;
      double bv = av[o * s.n * s.inner + i];
      for (std::int64_t j = 1; j < s.n; ++j) {
        double v = av[(o * s.n + j) * s.inner + i];
        if (v > bv) {
          bv = v;
          best = j;
        }
      }
      out[o * s.inner + i] = bv;
      arg[o * s.inner + i] = best;
    }
  return Tensor::MakeResult(s.reduced, std::move(out), {a},
                            [s, arg = std::move(arg)](Node& self) {
                              double* ga = ParentGrad(self, 0);
                              if (!ga) return;
                              for (std::int64_t o = 0; o < s.outer; ++o)
                                for (std::int64_t i = 0; i < s.inner; ++i) {
                                  const std::int64_t r = o * s.inner + i;
                                  ga[(o * s.n + arg[r]) * s.inner + i] += self.grad[r];
                                }
                            });
}

namespace {

// Shared forward for softmax / log-softmax along an axis.
std::vector<double> SoftmaxValues(const std::vector<double>& x, const AxisSplit& s,
                                  bool log_space) {
  std::vector<double> out(x.size());
  for (std::int64_t o = 0; o < s.outer; ++o)
    for (std::int64_t i = 0; i < s.inner; ++i) {
      auto at = [&](std::int64_t j) { return (o * s.n + j) * s.inner + i; };
      double mx = -std::numeric_limits<double>::infinity();
      for (std::int64_t j = 0; j < s.n; ++j) mx = std::max(mx, x[at(j)]);
      double z = 0.0;
      for (std::int64_t j = 0; j < s.n; ++j) z += std::exp(x[at(j)] - mx);
      const double log_z = std::log(z);
      for (std::int64_t j = 0; j < s.n; ++j) {
        out[at(j)] = log_space ? x[at(j)] - mx - log_z : std::exp(x[at(j)] - mx) / z;
      }
    }
  return out;
}

}  // namespace

Tensor Softmax(const Tensor& a, int axis) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  std::vector<double> out = SoftmaxValues(a.node().value, s, false);
  return Tensor::MakeResult(a.shape(), std::move(out), {a}, [s](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    const auto& y = self.value;
    const auto& g = self.grad;
    for (std::int64_t o = 0; o < s.outer; ++o)
      for (std::int64_t i = 0; i < s.inner; ++i) {
        auto at = [&](std::int64_t j) { return (o * s.n + j) * s.inner + i; };
        double dot = 0.0;
        for (std::int64_t j = 0; j < s.n; ++j) dot += g[at(j)] * y[at(j)];
        for (std::int64_t j = 0; j < s.n; ++j) ga[at(j)] += y[at(j)] * (g[at(j)] - dot);
      }
  });
}

Tensor LogSoftmax(const Tensor& a, int axis) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  std::vector<double> out = SoftmaxValues(a.node().value, s, true);
  return Tensor::MakeResult(a.shape(), std::move(out), {a}, [s](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    const auto& y = self.value;
    const auto& g = self.grad;
    for (std::int64_t o = 0; o < s.outer; ++o)
      for (std::int64_t i = 0; i < s.inner; ++i) {
        auto at = [&](std::int64_t j) { return (o * s.n + j) * s.inner + i; };
        double gsum = 0.0;
        for (std::int64_t j = 0; j < s.n; ++j) gsum += g[at(j)];
        for (std::int64_t j = 0; j < s.n; ++j) ga[at(j)] += g[at(j)] - std::exp(y[at(j)]) * gsum;
      }
  });
}

Tensor LayerNorm(const Tensor& a, int axis, double eps) {
  const AxisSplit s = SplitAxis(a.shape(), axis);
  const auto& x = a.node().value;
  std::vector<double> out(x.size());
  std::vector<double> inv_std(static_cast<std::size_t>(s.outer * s.inner));
  for (std::int64_t o = 0; o < s.outer; ++o)
    for (std::int64_t i = 0; i < s.inner; ++i) {
      auto at = [&](std::int64_t j) { return (o * s.n + j) * s.inner + i; };
      double mean = 0.0;
      for (std::int64_t j = 0; j < s.n; ++j) mean += x[at(j)];
      mean /= static_cast<double>(s.n);
      double var = 0.0;
      for (std::int64_t j = 0; j < s.n; ++j) {
        const double d = x[at(j)] - mean;
        var += d * d;
      }
      var /= static_cast<double>(s.n);
      const double r = 1.0 / std::sqrt(var + eps);
      inv_std[o * s.inner + i] = r;
      for (std::int64_t j = 0; j < s.n; ++j) out[at(j)] = (x[at(j)] - mean) * r;
    }
  return Tensor::MakeResult(
      a.shape(), std::move(out), {a}, [s, inv_std = std::move(inv_std)](Node& self) {
        double* ga = ParentGrad(self, 0);
        if (!ga) return;
        const auto& y = self.value;
        const auto& g = self.grad;
        const double n = static_cast<double>(s.n);
        for (std::int64_t o = 0; o < s.outer; ++o)
          for (std::int64_t i = 0; i < s.inner; ++i) {
            auto at = [&](std::int64_t j) { return (o * s.n + j) * s.inner + i; };
            double gmean = 0.0, gy = 0.0;
            for (std::int64_t j = 0; j < s.n; ++j) {
              gmean += g[at(j)];
              gy += g[at(j)] * y[at(j)];
            }
            gmean /= n;
            gy /= n;
            const double r = inv_std[o * s.inner + i];
            for (std::int64_t j = 0; j < s.n; ++j) {
              ga[at(j)] += r * (g[at(j)] - gmean - y[at(j)] * gy);
            }
          }
      });
}

Tensor ApplyAxisOp(AxisOp op, const Tensor& a, int axis) {
  switch (op) {
    case AxisOp::kSum: return Sum(a, axis);
    case AxisOp::kMean: return Mean(a, axis);
    case AxisOp::kMax: return Max(a, axis);
    case AxisOp::kSoftmax: return Softmax(a, axis);
    case AxisOp::kLogSoftmax: return LogSoftmax(a, axis);
    case AxisOp::kLayerNorm: return LayerNorm(a, axis);
    case AxisOp::kGelu:
      SplitAxis(a.shape(), axis);
      return Gelu(a);
  }
  throw ContractError("unknown axis op");
}

Tensor Reshape(const Tensor& a, const Shape& shape) {
  if (NumElements(shape) != a.numel()) {
    throw DimensionError("cannot reshape " + ShapeToString(a.shape()) + " to " +
                         ShapeToString(shape));
  }
  return Tensor::MakeResult(shape, a.node().value, {a}, [](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) ga[i] += self.grad[i];
  });
}

Tensor TileRows(const Tensor& row, std::int64_t n) {
  std::int64_t d;
  if (row.rank() == 1) {
    d = row.dim(0);
  } else if (row.rank() == 2 && row.dim(0) == 1) {
    d = row.dim(1);
  } else {
    throw DimensionError("TileRows needs [d] or [1 x d], got " + ShapeToString(row.shape()));
  }
  auto rv = row.values();
  std::vector<double> out(static_cast<std::size_t>(n * d));
  for (std::int64_t r = 0; r < n; ++r) std::copy(rv.begin(), rv.end(), out.begin() + r * d);
  return Tensor::MakeResult({n, d}, std::move(out), {row}, [n, d](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t c = 0; c < d; ++c) ga[c] += self.grad[r * d + c];
  });
}

Tensor SliceRows(const Tensor& a, std::int64_t begin, std::int64_t count) {
  if (a.rank() < 1 || begin < 0 || count < 0 || begin + count > a.dim(0)) {
    throw DimensionError("row slice [" + std::to_string(begin) + ", +" +
                         std::to_string(count) + ") out of range for " +
                         ShapeToString(a.shape()));
  }
  const std::int64_t width = a.numel() / std::max<std::int64_t>(a.dim(0), 1);
  Shape shape = a.shape();
  shape[0] = count;
  auto av = a.values();
  std::vector<double> out(av.begin() + begin * width, av.begin() + (begin + count) * width);
  return Tensor::MakeResult(shape, std::move(out), {a}, [begin, width](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    for (std::size_t i = 0; i < self.grad.size(); ++i) ga[begin * width + i] += self.grad[i];
  });
}

Tensor ConcatRows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw DimensionError("ConcatRows of nothing");
  Shape shape = parts[0].shape();
  if (shape.empty()) throw DimensionError("ConcatRows needs rank >= 1");
  std::int64_t rows = 0;
  std::vector<std::size_t> offsets;
  std::vector<double> out;
  for (const Tensor& p : parts) {
    if (p.rank() != static_cast<int>(shape.size()) ||
        !std::equal(shape.begin() + 1, shape.end(), p.shape().begin() + 1)) {
      throw DimensionError("ConcatRows shape mismatch: " + ShapeToString(shape) + " vs " +
                           ShapeToString(p.shape()));
    }
    offsets.push_back(out.size());
    out.insert(out.end(), p.values().begin(), p.values().end());
    rows += p.dim(0);
  }
  shape[0] = rows;
  return Tensor::MakeResult(shape, std::move(out), parts, [offsets](Node& self) {
    for (std::size_t k = 0; k < self.parents.size(); ++k) {
      double* gk = ParentGrad(self, k);
      if (!gk) continue;
      const std::size_t n = self.parents[k]->value.size();
      for (std::size_t i = 0; i < n; ++i) gk[i] += self.grad[offsets[k] + i];
    }
  });
}

Tensor GatherRows(const Tensor& a, const std::vector<std::int64_t>& indices) {
  RequireMatrix(a, "GatherRows");
  const std::int64_t rows = a.dim(0), d = a.dim(1);
  auto av = a.values();
  std::vector<double> out(indices.size() * static_cast<std::size_t>(d), 0.0);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::int64_t src = indices[r];
    if (src >= rows) {
      throw DimensionError("gather index " + std::to_string(src) + " out of range for " +
                           ShapeToString(a.shape()));
    }
    if (src < 0) continue;
    std::copy(av.begin() + src * d, av.begin() + (src + 1) * d, out.begin() + r * d);
  }
  return Tensor::MakeResult({static_cast<std::int64_t>(indices.size()), d}, std::move(out), {a},
                            [indices, d](Node& self) {
                              double* ga = ParentGrad(self, 0);
                              if (!ga) return;
                              for (std::size_t r = 0; r < indices.size(); ++r) {
                                if (indices[r] < 0) continue;
                                double* dst = ga + indices[r] * d;
                                const double* g = self.grad.data() + r * d;
                                for (std::int64_t c = 0; c < d; ++c) dst[c] += g[c];
                              }
                            });
}

Tensor PickPerRow(const Tensor& a, const std::vector<std::int64_t>& cols) {
  RequireMatrix(a, "PickPerRow");
  const std::int64_t n = a.dim(0), m = a.dim(1);
  if (static_cast<std::int64_t>(cols.size()) != n) {
    throw DimensionError("PickPerRow needs one column per row");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    if (cols[r] < 0 || cols[r] >= m) {
      throw DimensionError("column " + std::to_string(cols[r]) + " out of range");
    }
    out[r] = a.values()[r * m + cols[r]];
  }
  return Tensor::MakeResult({n}, std::move(out), {a}, [cols, m](Node& self) {
    double* ga = ParentGrad(self, 0);
    if (!ga) return;
    for (std::size_t r = 0; r < cols.size(); ++r) ga[r * m + cols[r]] += self.grad[r];
  });
}

Tensor LogSoftmaxOverSubsets(const Tensor& scores,
                             const std::vector<std::vector<std::int64_t>>& subsets,
                             const std::vector<std::int64_t>& target) {
  RequireMatrix(scores, "LogSoftmaxOverSubsets");
  const std::int64_t n = scores.dim(0), m = scores.dim(1);
  if (static_cast<std::int64_t>(subsets.size()) != n ||
      static_cast<std::int64_t>(target.size()) != n) {
    throw DimensionError("LogSoftmaxOverSubsets needs one subset and target per row");
  }
  auto sv = scores.values();
  std::vector<double> out(static_cast<std::size_t>(n));
  // Softmax weights over each subset, reused by the backward pass.
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    const auto& cols = subsets[r];
    if (cols.empty()) throw ContractError("empty candidate subset in row " + std::to_string(r));
    if (target[r] < 0 || target[r] >= m) throw DimensionError("target column out of range");
    double mx = -std::numeric_limits<double>::infinity();
    for (std::int64_t c : cols) {
      if (c < 0 || c >= m) throw DimensionError("subset column out of range");
      mx = std::max(mx, sv[r * m + c]);
    }
    double z = 0.0;
    auto& w = weights[r];
    w.resize(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      w[k] = std::exp(sv[r * m + cols[k]] - mx);
      z += w[k];
    }
    for (double& v : w) v /= z;
    out[r] = sv[r * m + target[r]] - (mx + std::log(z));
  }
  return Tensor::MakeResult(
      {n}, std::move(out), {scores},
      [subsets, target, m, weights = std::move(weights)](Node& self) {
        double* ga = ParentGrad(self, 0);
        if (!ga) return;
        for (std::size_t r = 0; r < subsets.size(); ++r) {
          const double g = self.grad[r];
          ga[r * m + target[r]] += g;
          for (std::size_t k = 0; k < subsets[r].size(); ++k) {
            ga[r * m + subsets[r][k]] -= g * weights[r][k];
          }
        }
      });
}

Tensor L2NormalizeRows(const Tensor& a, double eps) {
  RequireMatrix(a, "L2NormalizeRows");
  const std::int64_t n = a.dim(0), d = a.dim(1);
  auto av = a.values();
  std::vector<double> out(av.size());
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    double ss = 0.0;
    for (std::int64_t c = 0; c < d; ++c) ss += av[r * d + c] * av[r * d + c];
    norms[r] = std::max(std::sqrt(ss), eps);
    for (std::int64_t c = 0; c < d; ++c) out[r * d + c] = av[r * d + c] / norms[r];
  }
  return Tensor::MakeResult(
      a.shape(), std::move(out), {a}, [n, d, eps, norms = std::move(norms)](Node& self) {
        double* ga = ParentGrad(self, 0);
        if (!ga) return;
        const auto& y = self.value;
        const auto& g = self.grad;
        for (std::int64_t r = 0; r < n; ++r) {
          const double inv = 1.0 / norms[r];
          if (norms[r] <= eps) {
            // Clamped norm: the map is linear in this region.
            for (std::int64_t c = 0; c < d; ++c) ga[r * d + c] += g[r * d + c] * inv;
            continue;
          }
          double dot = 0.0;
          for (std::int64_t c = 0; c < d; ++c) dot += y[r * d + c] * g[r * d + c];
          for (std::int64_t c = 0; c < d; ++c) {
            ga[r * d + c] += (g[r * d + c] - y[r * d + c] * dot) * inv;
          }
        }
      });
}

Tensor Dropout(const Tensor& a, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw ConfigError("dropout rate must be in [0, 1)");
  if (rate == 0.0) return a;
  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(static_cast<std::size_t>(a.numel()));
  for (double& m : mask) m = UniformUnit(rng) < rate ? 0.0 : keep_scale;
  return Mul(a, Tensor::FromVector(a.shape(), std::move(mask)));
}

}  // namespace rslu::ad
