// src/encoder/config.cc
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

#include "rslu/encoder/config.h"

#include "rslu/common/errors.h"

namespace rslu {

void EncoderConfig::Validate() const {
  auto positive = [](std::int64_t v, const char* name) {
    if (v < 1) throw ConfigError(std::string("encoder ") + name + " must be >= 1");
  };
  positive(d_model, "d_model");
  positive(n_layers, "n_layers");
  positive(n_heads, "n_heads");
  positive(d_ff, "d_ff");
  positive(vocab_size, "vocab_size");
  positive(n_intents, "n_intents");
  positive(d_proj, "d_proj");
  if (max_len < 2) throw ConfigError("encoder max_len must be >= 2");
  if (d_model % n_heads != 0) throw ConfigError("d_model must be divisible by n_heads");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout_rate must be in [0, 1)");
  }
}

nlohmann::json EncoderConfig::ToJson() const {
  return {{"d_model", d_model},       {"n_layers", n_layers},   {"n_heads", n_heads},
          {"d_ff", d_ff},             {"max_len", max_len},     {"vocab_size", vocab_size},
          {"n_intents", n_intents},   {"d_proj", d_proj},       {"dropout_rate", dropout_rate},
          {"init_seed", init_seed}};
}

EncoderConfig EncoderConfig::FromJson(const nlohmann::json& j) {
  EncoderConfig c;
  try {
    c.d_model = j.at("d_model").get<std::int64_t>();
    c.n_layers = j.at("n_layers").get<std::int64_t>();
    c.n_heads = j.at("n_heads").get<std::int64_t>();
    c.d_ff = j.at("d_ff").get<std::int64_t>();
    c.max_len = j.at("max_len").get<std::int64_t>();
    c.vocab_size = j.at("vocab_size").get<std::int64_t>();
    c.n_intents = j.at("n_intents").get<std::int64_t>();
    c.d_proj = j.at("d_proj").get<std::int64_t>();
    c.dropout_rate = j.at("dropout_rate").get<double>();
    c.init_seed = j.at("init_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad encoder config: ") + e.what());
  }
  return c;
}

std::int64_t ParameterCount(const EncoderConfig& c) {
  const std::int64_t d = c.d_model;
  const std::int64_t per_layer = 4 * (d * d + d)      // q, k, v, output projections
                                 + 2 * d              // first layer norm
                                 + d * c.d_ff + c.d_ff  // feed-forward in
                                 + c.d_ff * d + d     // feed-forward out
                                 + 2 * d;             // second layer norm
  return c.vocab_size * d + c.max_len * d + c.n_layers * per_layer +
         (c.max_len * d * c.d_proj + c.d_proj) + (d * c.n_intents + c.n_intents);
}

}  // namespace rslu
