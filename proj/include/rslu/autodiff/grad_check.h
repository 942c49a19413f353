// include/rslu/autodiff/grad_check.h
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

#ifndef RSLU_AUTODIFF_GRAD_CHECK_H_
#define RSLU_AUTODIFF_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rslu/autodiff/tensor.h"

namespace rslu::ad {

struct GradCheckOptions {
  double step = 1e-5;
  double tol = 1e-4;
  // Relative error is |auto - numeric| / max(|auto|, |numeric|, abs_floor);
  // the floor keeps entries whose true gradient is ~0 from dividing noise by
  // noise.
  double abs_floor = 1e-6;
};

struct GradCheckEntry {
  std::size_t param = 0;
  std::int64_t index = 0;
  double autodiff = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::vector<GradCheckEntry> flagged;

  bool passed() const { return flagged.empty(); }
  std::string Summary() const;
};

// Compares the reverse-mode gradient of a scalar f at x against central
// differences. f is evaluated twice up front; differing results mean f is not
// deterministic and raise ContractError.
GradCheckReport FiniteDiffCheck(const std::function<Tensor(const Tensor&)>& f,
                                const Tensor& x,
                                const GradCheckOptions& options = {});

// Variant over leaf parameters that `loss` reads implicitly. The parameters'
// values are perturbed in place and restored; their gradients are reset.
GradCheckReport FiniteDiffCheck(const std::function<Tensor()>& loss,
                                const std::vector<Tensor>& params,
                                const GradCheckOptions& options = {});

}  // namespace rslu::ad

#endif  // RSLU_AUTODIFF_GRAD_CHECK_H_
