// include/rslu/train/config.h
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

#ifndef RSLU_TRAIN_CONFIG_H_
#define RSLU_TRAIN_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rslu/encoder/config.h"
#include "rslu/losses/contrastive.h"

namespace rslu {

enum class Method { kCleanCe, kNoisyCe, kCnCe, kCcl };

std::string_view MethodName(Method method);
// Accepts clean_ce, noisy_ce, cn_ce, ccl; ConfigError otherwise.
Method ParseMethod(std::string_view name);

struct Stage1Config {
  double lr = 5e-4;
  int epochs = 10;
  ContrastiveConfig contrastive;
  bool use_sel = true;
  bool use_utt = true;

  bool enabled() const { return epochs > 0 && (use_sel || use_utt); }
};

// Also drives the single-network baselines (lr, epochs, patience).
struct Stage2Config {
  double lr = 1e-3;
  int epochs = 20;
  double lambda_con = 0.5;
  // Ablation: train the inference network with CE on noisy input instead of
  // following the reference network.
  bool use_ce_instead_of_con = false;
  // Compute the reference targets before the reference update of the same
  // step instead of after it.
  bool simultaneous_update = false;
  int patience = 5;
};

struct TrainConfig {
  Method method = Method::kCcl;
  std::uint64_t seed = 0;
  std::int64_t batch_size = 32;
  int min_freq = 1;
  // vocab_size and n_intents are filled from the data; init_seed from seed.
  EncoderConfig encoder;
  Stage1Config stage1;
  Stage2Config stage2;

  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing fields keep their defaults. Unknown or mistyped fields raise
  // ConfigError naming the field.
  static TrainConfig FromJson(const nlohmann::json& j);
};

}  // namespace rslu

#endif  // RSLU_TRAIN_CONFIG_H_
