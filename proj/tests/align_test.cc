// tests/align_test.cc
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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "rslu/align/alignment.h"
#include "rslu/align/pair_index.h"
#include "rslu/common/errors.h"
#include "rslu/common/random.h"

namespace rslu {
namespace {

using Tokens = std::vector<std::string>;

AlignOp Op(AlignOpKind kind, std::optional<std::int64_t> c, std::optional<std::int64_t> n) {
  return {kind, c, n};
}

// Exhaustive recursion over all edit scripts.
std::int64_t BruteDistance(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j) {
  if (i == a.size()) return static_cast<std::int64_t>(b.size() - j);
  if (j == b.size()) return static_cast<std::int64_t>(a.size() - i);
  return std::min({BruteDistance(a, i + 1, b, j + 1) + (a[i] != b[j]),
                   BruteDistance(a, i + 1, b, j) + 1, BruteDistance(a, i, b, j + 1) + 1});
}

Tokens RandomTokens(Rng& rng, std::size_t max_len) {
  static const Tokens alphabet = {"a", "b", "c"};
  Tokens out(UniformIndex(rng, max_len + 1));
  for (auto& w : out) w = alphabet[UniformIndex(rng, alphabet.size())];
  return out;
}

void CheckStructure(const Alignment& al, const Tokens& clean, const Tokens& noisy) {
  std::vector<int> clean_seen(clean.size()), noisy_seen(noisy.size());
  std::int64_t non_match = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> positives;
  for (const AlignOp& op : al.ops) {
    switch (op.kind) {
      case AlignOpKind::kMatch:
      case AlignOpKind::kSubstitute:
        REQUIRE(op.clean_index.has_value());
        REQUIRE(op.noisy_index.has_value());
        CHECK((op.kind == AlignOpKind::kMatch) == (clean[*op.clean_index] == noisy[*op.noisy_index]));
        positives.emplace_back(*op.clean_index, *op.noisy_index);
        break;
      case AlignOpKind::kInsert:
        CHECK_FALSE(op.clean_index.has_value());
        REQUIRE(op.noisy_index.has_value());
        break;
      case AlignOpKind::kDelete:
        REQUIRE(op.clean_index.has_value());
        CHECK_FALSE(op.noisy_index.has_value());
        break;
    }
    if (op.clean_index) ++clean_seen[*op.clean_index];
    if (op.noisy_index) ++noisy_seen[*op.noisy_index];
    non_match += op.kind != AlignOpKind::kMatch;
  }
  for (int c : clean_seen) CHECK(c == 1);
  for (int c : noisy_seen) CHECK(c == 1);
  CHECK(al.edit_distance == non_match);
  CHECK(al.positive_pairs == positives);
}

TEST_CASE("alignment of the substitution and insertion example") {
  const Tokens clean = {"set", "volume", "to", "zero"};
  const Tokens noisy = {"sat", "volume", "to", "the", "cero"};
  Alignment al = Align(clean, noisy);
  const std::vector<AlignOp> expected = {
      Op(AlignOpKind::kSubstitute, 0, 0), Op(AlignOpKind::kMatch, 1, 1),
      Op(AlignOpKind::kMatch, 2, 2), Op(AlignOpKind::kInsert, std::nullopt, 3),
      Op(AlignOpKind::kSubstitute, 3, 4)};
  CHECK(al.ops == expected);
  CHECK(al.edit_distance == 3);
  const std::vector<std::pair<std::int64_t, std::int64_t>> pos = {{0, 0}, {1, 1}, {2, 2}, {3, 4}};
  CHECK(al.positive_pairs == pos);
  CheckStructure(al, clean, noisy);
}

TEST_CASE("alignment small examples") {
  Alignment al = Align({"turn", "up"}, {"turn", "off"});
  CHECK(al.ops == std::vector<AlignOp>{Op(AlignOpKind::kMatch, 0, 0),
                                       Op(AlignOpKind::kSubstitute, 1, 1)});
  CHECK(al.edit_distance == 1);

  Alignment same = Align({"a", "b", "c"}, {"a", "b", "c"});
  CHECK(same.edit_distance == 0);
  CHECK(same.CountOf(AlignOpKind::kMatch) == 3);

  Alignment empty = Align({}, {"x", "y"});
  CHECK(empty.edit_distance == 2);
  CHECK(empty.CountOf(AlignOpKind::kInsert) == 2);
  CHECK(empty.positive_pairs.empty());

  CHECK(AlignmentToJson("p", al).find("\"edit_distance\":1") != std::string::npos);
}

TEST_CASE("alignment distance equals brute force on random short lists") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const Tokens a = RandomTokens(rng, 7);
    const Tokens b = RandomTokens(rng, 7);
    Alignment al = Align(a, b);
    CHECK(al.edit_distance == BruteDistance(a, 0, b, 0));
    CheckStructure(al, a, b);
    CHECK(Align(a, b).ops == al.ops);
  }
}

TEST_CASE("alignment symmetry and triangle inequality") {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    const Tokens a = RandomTokens(rng, 7), b = RandomTokens(rng, 7), c = RandomTokens(rng, 7);
    Alignment ab = Align(a, b), ba = Align(b, a);
    CHECK(ab.edit_distance == ba.edit_distance);
    CHECK(ab.CountOf(AlignOpKind::kInsert) + ab.CountOf(AlignOpKind::kSubstitute) ==
          ba.CountOf(AlignOpKind::kDelete) + ba.CountOf(AlignOpKind::kSubstitute));
    CHECK(ab.edit_distance <= Align(a, c).edit_distance + Align(c, b).edit_distance);
  }
}

TEST_CASE("pair index for one fully matched pair") {
  Alignment al = Align({"a", "b", "c"}, {"a", "b", "c"});
  PairIndex idx = BatchPairIndex({al}, {{0, 3, 0, 3}}, kUncapped, 1);
  CHECK(idx.size() == 3);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    CHECK(idx.negatives[k].size() == 2);
    CHECK(std::find(idx.negatives[k].begin(), idx.negatives[k].end(), idx.positives[k]) ==
          idx.negatives[k].end());
  }
}

TEST_CASE("pair index negatives include the other pair's noisy tokens") {
  Alignment a = Align({"set", "volume", "to", "zero"}, {"sat", "volume", "to", "the", "cero"});
  Alignment b = Align({"turn", "up"}, {"turn", "off"});
  PairIndex idx = BatchPairIndex({a, b}, {{0, 4, 0, 5}, {4, 2, 5, 2}}, kUncapped, 1);
  CHECK(idx.size() == 6);
  // Anchor 0 is clean "set"; its negatives cover noisy rows 1..6.
  const std::set<std::int64_t> neg(idx.negatives[0].begin(), idx.negatives[0].end());
  CHECK(neg == std::set<std::int64_t>{1, 2, 3, 4, 5, 6});
  // The inserted "the" (noisy row 3) is never a positive.
  for (auto p : idx.positives) CHECK(p != 3);
}

TEST_CASE("pair index matches brute-force enumeration") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t batch = 1 + UniformIndex(rng, 3);
    std::vector<Alignment> als;
    std::vector<TokenOffsets> offs;
    std::int64_t co = 0, no = 0;
    for (std::size_t b = 0; b < batch; ++b) {
      Tokens c = RandomTokens(rng, 5), n = RandomTokens(rng, 5);
      if (c.empty()) c.push_back("a");
      if (n.empty()) n.push_back("b");
      als.push_back(Align(c, n));
      offs.push_back({co, static_cast<std::int64_t>(c.size()), no,
                      static_cast<std::int64_t>(n.size())});
      co += c.size();
      no += n.size();
    }
    PairIndex idx = BatchPairIndex(als, offs, kUncapped, t);
    std::size_t k = 0;
    for (std::size_t b = 0; b < batch; ++b) {
      for (auto [ci, ni] : als[b].positive_pairs) {
        REQUIRE(k < idx.size());
        CHECK(idx.anchors[k] == offs[b].clean_offset + ci);
        CHECK(idx.positives[k] == offs[b].noisy_offset + ni);
        std::vector<std::int64_t> expected;
        for (std::int64_t r = 0; r < no; ++r) {
          if (r != idx.positives[k]) expected.push_back(r);
        }
        std::vector<std::int64_t> got = idx.negatives[k];
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
        ++k;
      }
    }
    CHECK(k == idx.size());
  }
}

TEST_CASE("pair index errors and caps") {
  Alignment al = Align({"a", "b"}, {"a", "b"});
  CHECK_THROWS_AS(BatchPairIndex({al, al}, {{0, 2, 0, 2}, {1, 2, 2, 2}}, kUncapped, 0),
                  ContractError);
  CHECK_THROWS_AS(BatchPairIndex({al}, {{0, 1, 0, 2}}, kUncapped, 0), ContractError);

  Alignment big = Align({"a", "b", "c", "d", "e"}, {"a", "b", "c", "d", "e"});
  PairIndex capped = BatchPairIndex({big}, {{0, 5, 0, 5}}, 2, 7);
  for (const auto& n : capped.negatives) CHECK(n.size() == 2);
  CHECK(BatchPairIndex({big}, {{0, 5, 0, 5}}, 2, 7).negatives == capped.negatives);

  PairIndex self = SelfPairIndex(4, kUncapped, 0);
  CHECK(self.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(self.anchors[k] == self.positives[k]);
    CHECK(self.negatives[k].size() == 3);
  }
  PairIndex diag = DiagonalPairIndex(3);
  CHECK(diag.negatives[1] == std::vector<std::int64_t>{0, 2});

  const std::vector<std::int64_t> cand = {10, 11, 12, 13, 14, 15};
  auto sample = ReservoirSample(cand, 3, 1);
  CHECK(sample.size() == 3);
  CHECK(std::is_sorted(sample.begin(), sample.end()));
  CHECK(ReservoirSample(cand, kUncapped, 1) == cand);
}

}  // namespace
}  // namespace rslu
