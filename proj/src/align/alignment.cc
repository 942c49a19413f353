// src/align/alignment.cc
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

#include "rslu/align/alignment.h"

#include <json.hpp>

#include <algorithm>

namespace rslu {

std::string_view AlignOpName(AlignOpKind kind) {
  switch (kind) {
    case AlignOpKind::kMatch: return "match";
    case AlignOpKind::kSubstitute: return "sub";
    case AlignOpKind::kInsert: return "ins";
    case AlignOpKind::kDelete: return "del";
  }
  return "match";
}

std::int64_t Alignment::CountOf(AlignOpKind kind) const {
  return std::count_if(ops.begin(), ops.end(), [kind](const AlignOp& op) { return op.kind == kind; });
}

Alignment Align(const std::vector<std::string>& clean, const std::vector<std::string>& noisy) {
  const std::size_t n = clean.size(), m = noisy.size();
  // cost[i][j]: edit distance between clean[0, i) and noisy[0, j).
  std::vector<std::vector<std::int64_t>> cost(n + 1, std::vector<std::int64_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) cost[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= m; ++j) cost[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t diag = cost[i - 1][j - 1] + (clean[i - 1] == noisy[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diag, cost[i - 1][j] + 1, cost[i][j - 1] + 1});
    }
  }

  Alignment out;
  out.edit_distance = cost[n][m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    AlignOp op;
    if (i > 0 && j > 0 && clean[i - 1] == noisy[j - 1] && cost[i][j] == cost[i - 1][j - 1]) {
      op = {AlignOpKind::kMatch, static_cast<std::int64_t>(i - 1), static_cast<std::int64_t>(j - 1)};
      --i;
      --j;
    } else if (i > 0 && j > 0 && cost[i][j] == cost[i - 1][j - 1] + 1) {
      op = {AlignOpKind::kSubstitute, static_cast<std::int64_t>(i - 1),
            static_cast<std::int64_t>(j - 1)};
      --i;
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      op = {AlignOpKind::kDelete, static_cast<std::int64_t>(i - 1), std::nullopt};
      --i;
    } else {
      op = {AlignOpKind::kInsert, std::nullopt, static_cast<std::int64_t>(j - 1)};
      --j;
    }
    out.ops.push_back(op);
  }
  std::reverse(out.ops.begin(), out.ops.end());
  for (const AlignOp& op : out.ops) {
    if (op.kind == AlignOpKind::kMatch || op.kind == AlignOpKind::kSubstitute) {
      out.positive_pairs.emplace_back(*op.clean_index, *op.noisy_index);
    }
  }
  return out;
}

std::string AlignmentToJson(const std::string& id, const Alignment& alignment) {
  nlohmann::json ops = nlohmann::json::array();
  for (const AlignOp& op : alignment.ops) {
    nlohmann::json o;
    o["op"] = std::string(AlignOpName(op.kind));
    o["clean"] = op.clean_index ? nlohmann::json(*op.clean_index) : nlohmann::json(nullptr);
    o["noisy"] = op.noisy_index ? nlohmann::json(*op.noisy_index) : nlohmann::json(nullptr);
    ops.push_back(std::move(o));
  }
  nlohmann::json positives = nlohmann::json::array();
  for (const auto& [c, h] : alignment.positive_pairs) positives.push_back({c, h});
  nlohmann::json rec;
  rec["id"] = id;
  rec["edit_distance"] = alignment.edit_distance;
  rec["ops"] = std::move(ops);
  rec["positives"] = std::move(positives);
  return rec.dump();
}

}  // namespace rslu
