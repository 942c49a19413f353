// include/rslu/encoder/checkpoint.h
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

#ifndef RSLU_ENCODER_CHECKPOINT_H_
#define RSLU_ENCODER_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rslu/encoder/network.h"

namespace rslu {

inline constexpr char kCheckpointMagic[4] = {'C', 'C', 'L', '1'};
inline constexpr int kCheckpointVersion = 1;

// Everything a checkpoint records besides the parameter arrays.
struct CheckpointMeta {
  EncoderConfig config;
  std::string method;
  std::vector<std::string> vocab_words;  // in id order, reserved ids included
  std::vector<std::string> labels;       // intent names in index order
  nlohmann::json extra = nlohmann::json::object();
};

struct Checkpoint {
  CheckpointMeta meta;
  std::vector<std::string> roles;
  std::vector<Network> networks;

  // Throws FormatError when the role is absent.
  const Network& Get(const std::string& role) const;
  bool Has(const std::string& role) const;
};

// Layout: magic "CCL1", u64 little-endian header length, JSON header, then
// each network's tensors as little-endian f64 arrays in header order. The
// file is written to a temporary name and renamed into place.
void SaveCheckpoint(const std::filesystem::path& path, const CheckpointMeta& meta,
                    const std::vector<std::pair<std::string, const Network*>>& networks);

// Any defect (bad magic, version, truncation, shape disagreement with the
// recorded config or with `expected`) raises FormatError before anything is
// returned. Shape errors name the tensor.
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const EncoderConfig* expected = nullptr);

// Parses only the JSON header.
CheckpointMeta ReadCheckpointMeta(const std::filesystem::path& path);

}  // namespace rslu

#endif  // RSLU_ENCODER_CHECKPOINT_H_
