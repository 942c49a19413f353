// include/rslu/cli/manifest.h
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

#ifndef RSLU_CLI_MANIFEST_H_
#define RSLU_CLI_MANIFEST_H_

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace rslu {

inline constexpr const char* kToolVersion = "0.1.0";

// Written into the run directory before any long computation. Holds what a
// replay needs: the command, the full config snapshot, and input hashes.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  struct Input {
    std::string path;
    std::string sha256;
  };
  std::map<std::string, Input> inputs;
  std::map<std::string, std::string> artifacts;
  std::string tool_version = kToolVersion;

  nlohmann::json ToJson() const;
  static RunManifest FromJson(const nlohmann::json& j);
  void Save(const std::filesystem::path& path) const;
  static RunManifest Load(const std::filesystem::path& path);

  // Throws ValidationError when an input is missing or its hash changed.
  void VerifyInputs() const;
};

}  // namespace rslu

#endif  // RSLU_CLI_MANIFEST_H_
