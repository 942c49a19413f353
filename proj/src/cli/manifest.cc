// src/cli/manifest.cc
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

#include "rslu/cli/manifest.h"

#include "rslu/common/errors.h"
#include "rslu/common/io.h"

namespace rslu {

nlohmann::json RunManifest::ToJson() const {
  nlohmann::json inputs_json = nlohmann::json::object();
  for (const auto& [name, in] : inputs) {
    inputs_json[name] = {{"path", in.path}, {"sha256", in.sha256}};
  }
  return {{"tool", "rslu"},           {"tool_version", tool_version}, {"command", command},
          {"config", config},         {"seed", seed},                 {"inputs", inputs_json},
          {"artifacts", artifacts}};
}

RunManifest RunManifest::FromJson(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& [name, in] : j.at("inputs").items()) {
      m.inputs[name] = {in.at("path").get<std::string>(), in.at("sha256").get<std::string>()};
    }
    m.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad run manifest: ") + e.what());
  }
  return m;
}

void RunManifest::Save(const std::filesystem::path& path) const {
  WriteFileAtomic(path, ToJson().dump(2) + "\n");
}

RunManifest RunManifest::Load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return FromJson(j);
}

void RunManifest::VerifyInputs() const {
  for (const auto& [name, in] : inputs) {
    if (!std::filesystem::exists(in.path)) {
      throw ValidationError("input '" + name + "' is missing: " + in.path);
    }
    if (Sha256File(in.path) != in.sha256) {
      throw ValidationError("input '" + name + "' changed since the run: " + in.path);
    }
  }
}

}  // namespace rslu
