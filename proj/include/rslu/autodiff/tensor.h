// include/rslu/autodiff/tensor.h
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

#ifndef RSLU_AUTODIFF_TENSOR_H_
#define RSLU_AUTODIFF_TENSOR_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rslu::ad {

using Shape = std::vector<std::int64_t>;

std::int64_t NumElements(const Shape& shape);
std::string ShapeToString(const Shape& shape);

namespace internal {

// One recorded value in a dynamic tape. Non-leaf nodes keep their parents and
// a closure that pushes this node's gradient into them; both are released once
// the graph has been consumed by Backward().
struct Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;
  bool has_grad = false;
  bool requires_grad = false;
  bool is_leaf = true;
  bool consumed = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  std::vector<double>& GradBuffer();
};

}  // namespace internal

// Dense row-major array of doubles with reverse-mode differentiation.
//
// Tensor is a cheap handle: copies share the underlying node. Operations in
// ops.h record a node whenever any input requires a gradient, and
// Backward() on a single-element result walks the recorded graph once in
// reverse topological order. Gradients accumulate into leaves until
// ZeroGrad() is called.
class Tensor {
 public:
  Tensor() = default;

  static Tensor Zeros(const Shape& shape, bool requires_grad = false);
  static Tensor Full(const Shape& shape, double fill,
                     bool requires_grad = false);
  static Tensor FromVector(const Shape& shape, std::vector<double> values,
                           bool requires_grad = false);
  static Tensor Scalar(double value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  std::int64_t dim(int axis) const;
  int rank() const { return static_cast<int>(shape().size()); }
  std::int64_t numel() const;

  std::span<const double> values() const;
  // Mutating values of a tensor that is part of a live graph invalidates the
  // recorded gradient rules; only do it on leaves between steps.
  std::span<double> mutable_values();
  double item() const;
  double at(std::int64_t flat_index) const;
  double at(std::int64_t row, std::int64_t col) const;

  bool requires_grad() const;
  void set_requires_grad(bool flag);
  bool is_leaf() const;
  bool has_grad() const;
  std::span<const double> grad() const;
  void ZeroGrad();

  void Backward();

  // Same values, no history, no gradient.
  Tensor Detach() const;

  // Identity of the underlying node (tests, parameter bookkeeping).
  const void* id() const { return node_.get(); }

  // Used by ops to build results; not part of the user-facing surface.
  static Tensor MakeResult(Shape shape, std::vector<double> values,
                           std::vector<Tensor> inputs,
                           std::function<void(internal::Node&)> backward);
  internal::Node& node() const;

 private:
  explicit Tensor(std::shared_ptr<internal::Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<internal::Node> node_;
};

}  // namespace rslu::ad

#endif  // RSLU_AUTODIFF_TENSOR_H_
