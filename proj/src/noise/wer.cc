// src/noise/wer.cc
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

#include "rslu/noise/wer.h"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rslu/align/alignment.h"
#include "rslu/common/errors.h"
#include "rslu/common/io.h"
#include "rslu/corpus/tokenizer.h"

namespace rslu {

namespace {

WerResult FromAlignment(const Alignment& a, std::size_t n_ref) {
  WerResult r;
  r.n_sub = a.CountOf(AlignOpKind::kSubstitute);
  r.n_ins = a.CountOf(AlignOpKind::kInsert);
  r.n_del = a.CountOf(AlignOpKind::kDelete);
  r.n_ref = static_cast<std::int64_t>(n_ref);
  r.wer = static_cast<double>(r.edits()) / static_cast<double>(n_ref);
  return r;
}

}  // namespace

WerResult WordErrorRate(const std::vector<std::string>& reference,
                        const std::vector<std::string>& hypothesis) {
  if (reference.empty()) throw ContractError("word error rate needs a non-empty reference");
  return FromAlignment(Align(reference, hypothesis), reference.size());
}

WerReport CorpusWerReport(const std::vector<TranscriptPair>& pairs) {
  WerReport report;
  double wer_sum = 0.0;
  for (const TranscriptPair& p : pairs) {
    const std::vector<std::string> ref = Tokenize(p.clean);
    const std::vector<std::string> hyp = Tokenize(p.noisy);
    if (ref.empty()) throw ContractError("pair '" + p.id + "' has an empty clean transcript");
    const Alignment a = Align(ref, hyp);
    PairWer pw{p.id, p.clean, p.noisy, FromAlignment(a, ref.size()), {}};
    for (const AlignOp& op : a.ops) {
      switch (op.kind) {
        case AlignOpKind::kSubstitute:
          pw.errors.push_back(ref[*op.clean_index] + " -> " + hyp[*op.noisy_index]);
          break;
        case AlignOpKind::kInsert: pw.errors.push_back("+" + hyp[*op.noisy_index]); break;
        case AlignOpKind::kDelete: pw.errors.push_back("-" + ref[*op.clean_index]); break;
        case AlignOpKind::kMatch: break;
      }
    }
    report.total_sub += pw.result.n_sub;
    report.total_ins += pw.result.n_ins;
    report.total_del += pw.result.n_del;
    report.total_ref += pw.result.n_ref;
    wer_sum += pw.result.wer;
    if (pw.result.wer > 1.0) report.over_one.push_back(p.id);
    report.pairs.push_back(std::move(pw));
  }
  if (report.total_ref > 0) {
    report.corpus_wer =
        static_cast<double>(report.total_edits()) / static_cast<double>(report.total_ref);
    report.mean_pair_wer = wer_sum / static_cast<double>(report.pairs.size());
  }
  return report;
}

std::vector<std::size_t> WerReport::WorstK(std::size_t k) const {
  std::vector<std::size_t> idx(pairs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].result.wer > pairs[b].result.wer;
  });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

namespace {

nlohmann::json PairJson(const PairWer& p) {
  return {{"id", p.id},           {"clean", p.clean},         {"noisy", p.noisy},
          {"wer", p.result.wer},  {"n_sub", p.result.n_sub},  {"n_ins", p.result.n_ins},
          {"n_del", p.result.n_del}, {"n_ref", p.result.n_ref}, {"errors", p.errors}};
}

}  // namespace

std::string WerReport::ToJson(std::size_t worst_k) const {
  nlohmann::json worst = nlohmann::json::array();
  for (std::size_t i : WorstK(worst_k)) worst.push_back(PairJson(pairs[i]));
  nlohmann::json per_pair = nlohmann::json::array();
  for (const PairWer& p : pairs) per_pair.push_back({{"id", p.id}, {"wer", p.result.wer}});
  nlohmann::json j = {
      {"n_pairs", pairs.size()},
      {"corpus_wer", corpus_wer},
      {"corpus_wer_definition", "total edits / total reference tokens"},
      {"mean_pair_wer", mean_pair_wer},
      {"mean_pair_wer_definition", "unweighted mean of per-pair WER"},
      {"substitutions", total_sub},
      {"insertions", total_ins},
      {"deletions", total_del},
      {"total_edits", total_edits()},
      {"reference_tokens", total_ref},
      {"pairs_over_one", over_one},
      {"per_pair", per_pair},
      {"worst", worst},
  };
  return j.dump(2) + "\n";
}

std::string WerReport::ToTable(std::size_t worst_k) const {
  std::ostringstream os;
  os << "pairs            " << pairs.size() << '\n'
     << "reference tokens " << total_ref << '\n'
     << "substitutions    " << total_sub << '\n'
     << "insertions       " << total_ins << '\n'
     << "deletions        " << total_del << '\n'
     << "corpus WER       " << FormatFixed(corpus_wer, 4) << "  (total edits / reference tokens)\n"
     << "mean pair WER    " << FormatFixed(mean_pair_wer, 4) << '\n';
  if (!over_one.empty()) os << "pairs with WER > 1: " << over_one.size() << '\n';
  const auto worst = WorstK(worst_k);
  if (!worst.empty()) {
    os << "\nWER     id                clean | noisy | errors\n";
    for (std::size_t i : worst) {
      const PairWer& p = pairs[i];
      std::string id = p.id;
      id.resize(std::max<std::size_t>(id.size(), 16), ' ');
      os << FormatFixed(p.result.wer, 4) << "  " << id << "  \"" << p.clean << "\" | \""
         << p.noisy << "\" | ";
      for (std::size_t e = 0; e < p.errors.size(); ++e) os << (e ? ", " : "") << p.errors[e];
      os << '\n';
    }
  }
  return os.str();
}

std::string WerReport::WorstKJsonl(std::size_t k) const {
  std::string out;
  for (std::size_t i : WorstK(k)) out += PairJson(pairs[i]).dump() + "\n";
  return out;
}

}  // namespace rslu
