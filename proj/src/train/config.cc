// src/train/config.cc
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

#include "rslu/train/config.h"

#include <set>
#include <type_traits>

#include "rslu/common/errors.h"

namespace rslu {

namespace {

using nlohmann::json;

void CheckKeys(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError("\"" + where + "\" must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("unknown field \"" + where + (where.empty() ? "" : ".") + it.key() + "\"");
    }
  }
}

template <typename T>
void Read(const json& obj, const std::string& where, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  const std::string name = where.empty() ? key : where + "." + key;
  bool ok;
  if constexpr (std::is_same_v<T, bool>) {
    ok = it->is_boolean();
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = it->is_number();
  } else if constexpr (std::is_unsigned_v<T>) {
    ok = it->is_number_unsigned() || (it->is_number_integer() && it->template get<std::int64_t>() >= 0);
  } else if constexpr (std::is_integral_v<T>) {
    ok = it->is_number_integer();
  } else {
    ok = it->is_string();
  }
  if (!ok) throw ConfigError("field \"" + name + "\" has the wrong type");
  out = it->template get<T>();
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kCleanCe: return "clean_ce";
    case Method::kNoisyCe: return "noisy_ce";
    case Method::kCnCe: return "cn_ce";
    case Method::kCcl: return "ccl";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kCleanCe, Method::kNoisyCe, Method::kCnCe, Method::kCcl}) {
    if (MethodName(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected clean_ce, noisy_ce, cn_ce or ccl)");
}

void TrainConfig::Validate() const {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (min_freq < 1) throw ConfigError("min_freq must be >= 1");
  if (!(stage1.lr > 0.0)) throw ConfigError("stage1.lr must be positive");
  if (!(stage2.lr > 0.0)) throw ConfigError("stage2.lr must be positive");
  if (stage1.epochs < 0) throw ConfigError("stage1.epochs must be >= 0");
  if (stage2.epochs < 0) throw ConfigError("stage2.epochs must be >= 0");
  if (stage2.patience < 1) throw ConfigError("stage2.patience must be >= 1");
  if (!(stage2.lambda_con >= 0.0 && stage2.lambda_con <= 1.0)) {
    throw ConfigError("stage2.lambda_con must lie in [0, 1]");
  }
  stage1.contrastive.Validate();
  if (method != Method::kCcl &&
      (stage2.use_ce_instead_of_con || stage2.simultaneous_update)) {
    throw ConfigError("stage-2 ablation flags only apply to method ccl");
  }
}

nlohmann::json TrainConfig::ToJson() const {
  json enc = {{"d_model", encoder.d_model}, {"n_layers", encoder.n_layers},
              {"n_heads", encoder.n_heads}, {"d_ff", encoder.d_ff},
              {"max_len", encoder.max_len}, {"d_proj", encoder.d_proj},
              {"dropout_rate", encoder.dropout_rate}};
  json s1 = {{"lr", stage1.lr},
             {"epochs", stage1.epochs},
             {"tau", stage1.contrastive.tau},
             {"lambda_ctr", stage1.contrastive.lambda_ctr},
             {"n_neg_max", stage1.contrastive.n_neg_max},
             {"positive_in_denominator", stage1.contrastive.positive_in_denominator},
             {"use_sel", stage1.use_sel},
             {"use_utt", stage1.use_utt}};
  json s2 = {{"lr", stage2.lr},
             {"epochs", stage2.epochs},
             {"lambda_con", stage2.lambda_con},
             {"use_ce_instead_of_con", stage2.use_ce_instead_of_con},
             {"simultaneous_update", stage2.simultaneous_update},
             {"patience", stage2.patience}};
  return {{"method", MethodName(method)}, {"seed", seed},   {"batch_size", batch_size},
          {"min_freq", min_freq},         {"encoder", enc}, {"stage1", s1},
          {"stage2", s2}};
}

TrainConfig TrainConfig::FromJson(const nlohmann::json& j) {
  TrainConfig c;
  CheckKeys(j, "", {"method", "seed", "batch_size", "min_freq", "encoder", "stage1", "stage2"});
  std::string method(MethodName(c.method));
  Read(j, "", "method", method);
  c.method = ParseMethod(method);
  Read(j, "", "seed", c.seed);
  Read(j, "", "batch_size", c.batch_size);
  Read(j, "", "min_freq", c.min_freq);
  if (auto it = j.find("encoder"); it != j.end()) {
    CheckKeys(*it, "encoder",
              {"d_model", "n_layers", "n_heads", "d_ff", "max_len", "d_proj", "dropout_rate"});
    Read(*it, "encoder", "d_model", c.encoder.d_model);
    Read(*it, "encoder", "n_layers", c.encoder.n_layers);
    Read(*it, "encoder", "n_heads", c.encoder.n_heads);
    Read(*it, "encoder", "d_ff", c.encoder.d_ff);
    Read(*it, "encoder", "max_len", c.encoder.max_len);
    Read(*it, "encoder", "d_proj", c.encoder.d_proj);
    Read(*it, "encoder", "dropout_rate", c.encoder.dropout_rate);
  }
  if (auto it = j.find("stage1"); it != j.end()) {
    CheckKeys(*it, "stage1", {"lr", "epochs", "tau", "lambda_ctr", "n_neg_max",
                              "positive_in_denominator", "use_sel", "use_utt"});
    Read(*it, "stage1", "lr", c.stage1.lr);
    Read(*it, "stage1", "epochs", c.stage1.epochs);
    Read(*it, "stage1", "tau", c.stage1.contrastive.tau);
    Read(*it, "stage1", "lambda_ctr", c.stage1.contrastive.lambda_ctr);
    Read(*it, "stage1", "n_neg_max", c.stage1.contrastive.n_neg_max);
    Read(*it, "stage1", "positive_in_denominator", c.stage1.contrastive.positive_in_denominator);
    Read(*it, "stage1", "use_sel", c.stage1.use_sel);
    Read(*it, "stage1", "use_utt", c.stage1.use_utt);
  }
  if (auto it = j.find("stage2"); it != j.end()) {
    CheckKeys(*it, "stage2", {"lr", "epochs", "lambda_con", "use_ce_instead_of_con",
                              "simultaneous_update", "patience"});
    Read(*it, "stage2", "lr", c.stage2.lr);
    Read(*it, "stage2", "epochs", c.stage2.epochs);
    Read(*it, "stage2", "lambda_con", c.stage2.lambda_con);
    Read(*it, "stage2", "use_ce_instead_of_con", c.stage2.use_ce_instead_of_con);
    Read(*it, "stage2", "simultaneous_update", c.stage2.simultaneous_update);
    Read(*it, "stage2", "patience", c.stage2.patience);
  }
  c.Validate();
  return c;
}

}  // namespace rslu
