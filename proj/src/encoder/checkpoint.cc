// src/encoder/checkpoint.cc
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

#include "rslu/encoder/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>

#include "rslu/common/errors.h"
#include "rslu/common/io.h"

namespace rslu {

namespace {

void AppendU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t ReadU64(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return v;
}

void AppendDouble(std::string& out, double x) { AppendU64(out, std::bit_cast<std::uint64_t>(x)); }

double ReadDouble(const std::string& in, std::size_t pos) {
  return std::bit_cast<double>(ReadU64(in, pos));
}

struct Parsed {
  CheckpointMeta meta;
  nlohmann::json networks;
  std::size_t data_offset = 0;
};

Parsed ParseHeader(const std::string& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0) {
    throw FormatError("not a checkpoint: missing CCL1 magic");
  }
  const std::uint64_t header_len = ReadU64(bytes, 4);
  if (header_len > bytes.size() - 12) throw FormatError("checkpoint header truncated");
  Parsed out;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(12, header_len));
    const int version = header.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw FormatError("unsupported checkpoint version " + std::to_string(version));
    }
    out.meta.config = EncoderConfig::FromJson(header.at("config"));
    out.meta.method = header.at("method").get<std::string>();
    out.meta.vocab_words = header.at("vocab").get<std::vector<std::string>>();
    out.meta.labels = header.at("labels").get<std::vector<std::string>>();
    out.meta.extra = header.value("extra", nlohmann::json::object());
    out.networks = header.at("networks");
    if (!out.networks.is_array()) throw FormatError("checkpoint networks must be a list");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad checkpoint header: ") + e.what());
  }
  out.data_offset = 12 + header_len;
  return out;
}

}  // namespace

const Network& Checkpoint::Get(const std::string& role) const {
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) return networks[i];
  }
  throw FormatError("checkpoint has no network with role " + role);
}

bool Checkpoint::Has(const std::string& role) const {
  for (const std::string& r : roles) {
    if (r == role) return true;
  }
  return false;
}

void SaveCheckpoint(const std::filesystem::path& path, const CheckpointMeta& meta,
                    const std::vector<std::pair<std::string, const Network*>>& networks) {
  nlohmann::json header;
  header["version"] = kCheckpointVersion;
  header["config"] = meta.config.ToJson();
  header["method"] = meta.method;
  header["vocab"] = meta.vocab_words;
  header["labels"] = meta.labels;
  header["extra"] = meta.extra;
  header["networks"] = nlohmann::json::array();
  std::string data;
  for (const auto& [role, net] : networks) {
    if (!(net->config() == meta.config)) {
      throw ContractError("network '" + role + "' config differs from checkpoint config");
    }
    nlohmann::json entry;
    entry["role"] = role;
    entry["tensors"] = nlohmann::json::array();
    for (const NamedParameter& p : net->parameters()) {
      entry["tensors"].push_back({{"name", p.name}, {"shape", p.value.shape()}});
      for (double x : p.value.values()) AppendDouble(data, x);
    }
    header["networks"].push_back(entry);
  }
  const std::string text = header.dump();
  std::string bytes(kCheckpointMagic, 4);
  AppendU64(bytes, text.size());
  bytes += text;
  bytes += data;
  WriteFileAtomic(path, bytes);
}

CheckpointMeta ReadCheckpointMeta(const std::filesystem::path& path) {
  return ParseHeader(ReadFile(path)).meta;
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path, const EncoderConfig* expected) {
  const std::string bytes = ReadFile(path);
  Parsed parsed = ParseHeader(bytes);
  const EncoderConfig& config = parsed.meta.config;
  // The shapes the caller expects; defaults to the recorded config.
  Network templ(expected ? *expected : config);
  Checkpoint out;
  std::size_t pos = parsed.data_offset;
  for (const nlohmann::json& entry : parsed.networks) {
    std::string role;
    std::vector<std::pair<std::string, ad::Shape>> tensors;
    try {
      role = entry.at("role").get<std::string>();
      for (const nlohmann::json& t : entry.at("tensors")) {
        tensors.emplace_back(t.at("name").get<std::string>(), t.at("shape").get<ad::Shape>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad checkpoint tensor table: ") + e.what());
    }
    const auto& params = templ.parameters();
    if (tensors.size() != params.size()) {
      throw FormatError("network '" + role + "' has " + std::to_string(tensors.size()) +
                        " tensors, expected " + std::to_string(params.size()));
    }
    Network net = templ.Clone();
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      const auto& [name, shape] = tensors[i];
      if (name != params[i].name) {
        throw FormatError("tensor " + std::to_string(i) + " is '" + name + "', expected '" +
                          params[i].name + "'");
      }
      if (shape != params[i].value.shape()) {
        throw FormatError("tensor '" + name + "' has shape " + ad::ShapeToString(shape) +
                          ", expected " + ad::ShapeToString(params[i].value.shape()));
      }
      ad::Tensor target = net.parameters()[i].value;
      auto values = target.mutable_values();
      if (bytes.size() < pos + values.size() * 8) {
        throw FormatError("checkpoint truncated inside tensor '" + name + "'");
      }
      for (double& x : values) {
        x = ReadDouble(bytes, pos);
        pos += 8;
      }
    }
    out.roles.push_back(role);
    out.networks.push_back(std::move(net));
  }
  if (pos != bytes.size()) throw FormatError("trailing bytes after checkpoint data");
  out.meta = std::move(parsed.meta);
  return out;
}

}  // namespace rslu
