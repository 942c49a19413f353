// src/autodiff/tensor.cc
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

#include "rslu/autodiff/tensor.h"

#include <unordered_set>
#include <utility>

#include "rslu/common/errors.h"

namespace rslu::ad {

std::int64_t NumElements(const Shape& shape) {
  std::int64_t n = 1;
  for (std::int64_t d : shape) {
    if (d < 0) throw DimensionError("negative dimension in " + ShapeToString(shape));
    n *= d;
  }
  return n;
}

std::string ShapeToString(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace internal {

std::vector<double>& Node::GradBuffer() {
  if (!has_grad) {
    grad.assign(value.size(), 0.0);
    has_grad = true;
  }
  return grad;
}

}  // namespace internal

Tensor Tensor::Zeros(const Shape& shape, bool requires_grad) {
  return Full(shape, 0.0, requires_grad);
}

Tensor Tensor::Full(const Shape& shape, double fill, bool requires_grad) {
  return FromVector(shape, std::vector<double>(NumElements(shape), fill),
                    requires_grad);
}

Tensor Tensor::FromVector(const Shape& shape, std::vector<double> values,
                          bool requires_grad) {
  if (NumElements(shape) != static_cast<std::int64_t>(values.size())) {
    throw DimensionError("shape " + ShapeToString(shape) + " does not match " +
                         std::to_string(values.size()) + " values");
  }
  auto node = std::make_shared<internal::Node>();
  node->shape = shape;
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::Scalar(double value, bool requires_grad) {
  return FromVector({}, {value}, requires_grad);
}

internal::Node& Tensor::node() const {
  if (!node_) throw StateError("use of an undefined tensor");
  return *node_;
}

const Shape& Tensor::shape() const { return node().shape; }

std::int64_t Tensor::dim(int axis) const {
  const Shape& s = shape();
  int r = static_cast<int>(s.size());
  if (axis < 0) axis += r;
  if (axis < 0 || axis >= r) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for " +
                         ShapeToString(s));
  }
  return s[axis];
}

std::int64_t Tensor::numel() const {
  return static_cast<std::int64_t>(node().value.size());
}

std::span<const double> Tensor::values() const { return node().value; }
std::span<double> Tensor::mutable_values() { return node().value; }

double Tensor::item() const {
  if (numel() != 1) {
    throw ContractError("item() on tensor of shape " + ShapeToString(shape()));
  }
  return node().value[0];
}

double Tensor::at(std::int64_t flat_index) const {
  return node().value.at(static_cast<std::size_t>(flat_index));
}

double Tensor::at(std::int64_t row, std::int64_t col) const {
  if (rank() != 2) throw DimensionError("at(row, col) needs a matrix");
  return node().value.at(static_cast<std::size_t>(row * dim(1) + col));
}

bool Tensor::requires_grad() const { return node().requires_grad; }

void Tensor::set_requires_grad(bool flag) {
  if (!node().is_leaf) {
    throw StateError("requires_grad can only be changed on leaf tensors");
  }
  node().requires_grad = flag;
}

bool Tensor::is_leaf() const { return node().is_leaf; }
bool Tensor::has_grad() const { return node().has_grad; }

std::span<const double> Tensor::grad() const {
  if (!node().has_grad) throw StateError("tensor has no gradient");
  return node().grad;
}

void Tensor::ZeroGrad() {
  internal::Node& n = node();
  n.grad.clear();
  n.has_grad = false;
}

Tensor Tensor::Detach() const {
  return FromVector(shape(), node().value, false);
}

Tensor Tensor::MakeResult(Shape shape, std::vector<double> values,
                          std::vector<Tensor> inputs,
                          std::function<void(internal::Node&)> backward) {
  auto node = std::make_shared<internal::Node>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->is_leaf = false;
  bool needs = false;
  for (const Tensor& t : inputs) needs = needs || t.node().requires_grad;
  node->requires_grad = needs;
  if (needs) {
    node->parents.reserve(inputs.size());
    for (Tensor& t : inputs) node->parents.push_back(std::move(t.node_));
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

void Tensor::Backward() {
  internal::Node& root = node();
  if (root.value.size() != 1) {
    throw ContractError("backward needs a single-element loss, got shape " +
                        ShapeToString(root.shape));
  }
  if (root.consumed) {
    throw StateError("backward called twice on the same graph");
  }
  if (!root.requires_grad) {
    throw ContractError("loss does not depend on any tensor requiring grad");
  }

  // Iterative post-order DFS: `order` ends up topologically sorted with every
  // node after all of its parents.
  std::vector<internal::Node*> order;
  std::unordered_set<internal::Node*> visited;
  std::vector<std::pair<internal::Node*, std::size_t>> stack;
  stack.emplace_back(&root, 0);
  visited.insert(&root);
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->parents.size()) {
      internal::Node* p = n->parents[next++].get();
      if (p->requires_grad && !visited.count(p)) {
        if (p->consumed) {
          throw StateError("backward through a graph that was already consumed");
        }
        visited.insert(p);
        stack.emplace_back(p, 0);
      }
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }

  root.GradBuffer()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    internal::Node* n = *it;
    if (n->backward && n->has_grad) n->backward(*n);
  }
  for (internal::Node* n : order) {
    if (!n->is_leaf) {
      n->backward = nullptr;
      n->parents.clear();
      n->consumed = true;
    }
  }
}

}  // namespace rslu::ad
