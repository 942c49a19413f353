// src/autodiff/grad_check.cc
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

#include "rslu/autodiff/grad_check.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rslu/common/errors.h"

namespace rslu::ad {

std::string GradCheckReport::Summary() const {
  std::ostringstream os;
  os << "checked " << checked << " entries, max rel. error " << max_rel_error
     << ", flagged " << flagged.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(flagged.size(), 5); ++i) {
    const GradCheckEntry& e = flagged[i];
    os << "\n  param " << e.param << " [" << e.index << "]: autodiff " << e.autodiff
       << " numeric " << e.numeric << " rel " << e.rel_error;
  }
  return os.str();
}

namespace {

void Record(GradCheckReport& report, const GradCheckOptions& options, std::size_t param,
            std::int64_t index, double autodiff, double numeric) {
  const double denom = std::max({std::abs(autodiff), std::abs(numeric), options.abs_floor});
  const double rel = std::abs(autodiff - numeric) / denom;
  ++report.checked;
  report.max_rel_error = std::max(report.max_rel_error, rel);
  if (!(rel <= options.tol)) report.flagged.push_back({param, index, autodiff, numeric, rel});
}

}  // namespace

GradCheckReport FiniteDiffCheck(const std::function<Tensor(const Tensor&)>& f,
                                const Tensor& x, const GradCheckOptions& options) {
  Tensor leaf = Tensor::FromVector(x.shape(), std::vector<double>(x.values().begin(),
                                                                  x.values().end()),
                                   true);
  auto eval = [&](const Tensor& in) {
    Tensor y = f(in);
    if (y.numel() != 1) throw ContractError("finite-difference check needs a scalar f");
    return y.item();
  };
  Tensor probe = leaf.Detach();
  const double first = eval(probe);
  const double second = eval(probe);
  if (first != second) {
    throw ContractError("function is not deterministic: two evaluations differ");
  }
  Tensor y = f(leaf);
  y.Backward();
  std::vector<double> analytic(leaf.grad().begin(), leaf.grad().end());

  GradCheckReport report;
  auto values = probe.mutable_values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double saved = values[i];
    values[i] = saved + options.step;
    const double plus = eval(probe);
    values[i] = saved - options.step;
    const double minus = eval(probe);
    values[i] = saved;
    Record(report, options, 0, static_cast<std::int64_t>(i), analytic[i],
           (plus - minus) / (2.0 * options.step));
  }
  return report;
}

GradCheckReport FiniteDiffCheck(const std::function<Tensor()>& loss,
                                const std::vector<Tensor>& params,
                                const GradCheckOptions& options) {
  auto eval = [&] {
    Tensor y = loss();
    if (y.numel() != 1) throw ContractError("finite-difference check needs a scalar loss");
    return y.item();
  };
  const double first = eval();
  const double second = eval();
  if (first != second) {
    throw ContractError("loss is not deterministic: two evaluations differ");
  }
  std::vector<Tensor> ps = params;
  for (Tensor& p : ps) p.ZeroGrad();
  loss().Backward();
  std::vector<std::vector<double>> analytic;
  for (Tensor& p : ps) {
    if (p.has_grad()) {
      analytic.emplace_back(p.grad().begin(), p.grad().end());
    } else {
      analytic.emplace_back(static_cast<std::size_t>(p.numel()), 0.0);
    }
    p.ZeroGrad();
  }

  GradCheckReport report;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    auto values = ps[k].mutable_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + options.step;
      const double plus = eval();
      values[i] = saved - options.step;
      const double minus = eval();
      values[i] = saved;
      Record(report, options, k, static_cast<std::int64_t>(i), analytic[k][i],
             (plus - minus) / (2.0 * options.step));
    }
  }
  return report;
}

}  // namespace rslu::ad
