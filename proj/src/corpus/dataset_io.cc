// src/corpus/dataset_io.cc
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

#include "rslu/corpus/dataset_io.h"

#include <json.hpp>

#include <set>

#include "rslu/common/errors.h"
#include "rslu/common/io.h"

namespace rslu {

using nlohmann::json;

std::vector<TranscriptPair> ParseJsonl(const std::string& text) {
  std::vector<TranscriptPair> pairs;
  std::set<std::string> ids;
  const std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(lines[i]);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
    auto field = [&](const char* name) -> std::string {
      auto it = obj.find(name);
      if (it == obj.end()) throw ParseError(std::string("missing field \"") + name + "\"", line_no);
      if (!it->is_string()) throw ParseError(std::string("field \"") + name + "\" is not a string", line_no);
      return it->get<std::string>();
    };
    TranscriptPair p;
    p.id = field("id");
    p.clean = field("clean");
    p.noisy = field("noisy");
    p.intent = field("intent");
    try {
      p.split = ParseSplit(field("split"));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!ids.insert(p.id).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate id '" + p.id + "'");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<TranscriptPair> LoadJsonl(const std::filesystem::path& path) {
  return ParseJsonl(ReadFile(path));
}

std::string ToJsonl(const std::vector<TranscriptPair>& pairs) {
  std::string out;
  for (const TranscriptPair& p : pairs) {
    json obj = json::object();
    obj["id"] = p.id;
    obj["clean"] = p.clean;
    obj["noisy"] = p.noisy;
    obj["intent"] = p.intent;
    obj["split"] = std::string(SplitName(p.split));
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

void SaveJsonl(const std::filesystem::path& path, const std::vector<TranscriptPair>& pairs) {
  WriteFileAtomic(path, ToJsonl(pairs));
}

}  // namespace rslu
