// include/rslu/align/alignment.h
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

#ifndef RSLU_ALIGN_ALIGNMENT_H_
#define RSLU_ALIGN_ALIGNMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rslu {

enum class AlignOpKind { kMatch, kSubstitute, kInsert, kDelete };

std::string_view AlignOpName(AlignOpKind kind);

// Match/Substitute carry both indices, Insert only the noisy index, Delete
// only the clean index.
struct AlignOp {
  AlignOpKind kind = AlignOpKind::kMatch;
  std::optional<std::int64_t> clean_index;
  std::optional<std::int64_t> noisy_index;

  bool operator==(const AlignOp&) const = default;
};

struct Alignment {
  std::vector<AlignOp> ops;
  std::int64_t edit_distance = 0;
  // (clean, noisy) index pairs of every Match and Substitute op, in order.
  std::vector<std::pair<std::int64_t, std::int64_t>> positive_pairs;

  std::int64_t CountOf(AlignOpKind kind) const;
};

// Unit-cost Levenshtein alignment with backtrace. Ties in the backtrace are
// broken Match > Substitute > Delete > Insert, starting from the end of both
// sequences; ops are returned in increasing position order.
Alignment Align(const std::vector<std::string>& clean, const std::vector<std::string>& noisy);

// One JSON-lines record: {"id", "edit_distance", "ops":[{"op","clean","noisy"}], "positives"}.
std::string AlignmentToJson(const std::string& id, const Alignment& alignment);

}  // namespace rslu

#endif  // RSLU_ALIGN_ALIGNMENT_H_
