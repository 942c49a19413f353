// include/rslu/encoder/config.h
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

#ifndef RSLU_ENCODER_CONFIG_H_
#define RSLU_ENCODER_CONFIG_H_

#include <cstdint>
#include <string>

#include <json.hpp>

namespace rslu {

struct EncoderConfig {
  std::int64_t d_model = 64;
  std::int64_t n_layers = 2;
  std::int64_t n_heads = 2;
  std::int64_t d_ff = 128;
  std::int64_t max_len = 24;
  std::int64_t vocab_size = 0;
  std::int64_t n_intents = 0;
  std::int64_t d_proj = 128;
  double dropout_rate = 0.1;
  std::uint64_t init_seed = 0;

  // ConfigError on non-positive sizes, d_model % n_heads != 0, max_len < 2 or
  // dropout outside [0, 1).
  void Validate() const;

  nlohmann::json ToJson() const;
  static EncoderConfig FromJson(const nlohmann::json& j);

  bool operator==(const EncoderConfig&) const = default;
};

// Closed form for one network (encoder + projection + classifier).
std::int64_t ParameterCount(const EncoderConfig& config);

}  // namespace rslu

#endif  // RSLU_ENCODER_CONFIG_H_
