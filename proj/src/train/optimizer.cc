// src/train/optimizer.cc
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

#include "rslu/train/optimizer.h"

#include <cmath>

#include "rslu/common/errors.h"

namespace rslu {

Adam::Adam(std::vector<ad::Tensor> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  if (!(config_.lr > 0.0)) throw ConfigError("learning rate must be positive");
  for (const ad::Tensor& p : params_) {
    m_.emplace_back(static_cast<std::size_t>(p.numel()), 0.0);
    v_.emplace_back(static_cast<std::size_t>(p.numel()), 0.0);
  }
}

void Adam::Step() {
  ++steps_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    ad::Tensor& p = params_[k];
    if (!p.has_grad()) continue;
    const auto g = p.grad();
    auto x = p.mutable_values();
    std::vector<double>& m = m_[k];
    std::vector<double>& v = v_[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double gi = g[i] + config_.weight_decay * x[i];
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * gi;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * gi * gi;
      x[i] -= config_.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + config_.eps);
    }
  }
}

void Adam::ZeroGrad() {
  for (ad::Tensor& p : params_) p.ZeroGrad();
}

double Adam::GradNorm() const {
  double s = 0.0;
  for (const ad::Tensor& p : params_) {
    if (!p.has_grad()) continue;
    for (double g : p.grad()) s += g * g;
  }
  return std::sqrt(s);
}

}  // namespace rslu
