// tests/losses_test.cc
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
#include <cmath>
#include <numeric>

#include "rslu/align/alignment.h"
#include "rslu/align/pair_index.h"
#include "rslu/autodiff/grad_check.h"
#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "rslu/losses/consistency.h"
#include "rslu/losses/contrastive.h"
#include "grad_fixtures.h"

namespace rslu {
namespace {

using ad::Tensor;
using testing::RandomTensor;
using testing::RandomTokenBatch;
using testing::TokenBatch;
using Rows = std::vector<std::vector<double>>;

const double kOrthonormalLoss = std::log(1.0 + std::exp(-1.0));

Rows ToRows(const Tensor& t) {
  Rows out(static_cast<std::size_t>(t.dim(0)), std::vector<double>(t.dim(1)));
  for (std::int64_t r = 0; r < t.dim(0); ++r) {
    for (std::int64_t c = 0; c < t.dim(1); ++c) out[r][c] = t.at(r, c);
  }
  return out;
}

Rows Normalize(Rows rows) {
  for (auto& row : rows) {
    double n = 0.0;
    for (double x : row) n += x * x;
    n = std::max(std::sqrt(n), 1e-12);
    for (double& x : row) x /= n;
  }
  return rows;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Plain scalar evaluation of the contrastive objective, positive in the
// denominator.
double ScalarInfoNce(const Rows& h, const Rows& hp, const PairIndex& idx, double tau) {
  double total = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& a = h[idx.anchors[k]];
    const double pos = std::exp(Dot(a, hp[idx.positives[k]]) / tau);
    double denom = pos;
    for (auto j : idx.negatives[k]) denom += std::exp(Dot(a, hp[j]) / tau);
    total += -std::log(pos / denom);
  }
  return total / static_cast<double>(idx.size());
}

ContrastiveConfig Config(double tau = 0.5) { return testing::UncappedConfig(tau); }

TEST_CASE("info_nce orthonormal example") {
  Tensor h = Tensor::FromVector({2, 2}, {1, 0, 0, 1});
  Tensor loss = InfoNce(h, h, DiagonalPairIndex(2), 1.0);
  CHECK(std::abs(loss.item() - kOrthonormalLoss) < 1e-12);
  CHECK(std::abs(loss.item() - 0.3133) < 1e-4);
}

TEST_CASE("info_nce trivial cases and errors") {
  Tensor h = Tensor::FromVector({1, 2}, {0.6, 0.8});
  PairIndex single{{0}, {0}, {{}}};
  CHECK(InfoNce(h, h, single, 0.1).item() == 0.0);
  CHECK_THROWS_AS(InfoNce(h, h, single, 0.1, false), ContractError);
  CHECK_THROWS_AS(InfoNce(h, h, PairIndex{}, 0.1), ContractError);
  CHECK_THROWS_AS(InfoNce(h, h, single, 0.0), ConfigError);
  CHECK_THROWS_AS(InfoNce(h, h, single, -1.0), ConfigError);
}

TEST_CASE("info_nce decreases as the positive similarity grows") {
  Tensor anchors = Tensor::FromVector({1, 2}, {1, 0});
  double previous = INFINITY;
  for (double angle = 1.5; angle >= 0.0; angle -= 0.1) {
    Tensor cand = Tensor::FromVector({2, 2}, {std::cos(angle), std::sin(angle), 0.0, 1.0});
    const double v = InfoNce(anchors, cand, PairIndex{{0}, {0}, {{1}}}, 0.5).item();
    CHECK(v < previous);
    CHECK(v >= 0.0);
    previous = v;
  }
}

TEST_CASE("info_nce is non-negative on random instances") {
  for (int t = 0; t < 50; ++t) {
    Rng rng(t);
    TokenBatch b = RandomTokenBatch(rng);
    CHECK(InfoNce(b.clean, b.noisy, b.cross, 0.3).item() >= 0.0);
  }
}

TEST_CASE("selective token loss equals its scalar form") {
  for (int t = 0; t < 20; ++t) {
    Rng rng(100 + t);
    TokenBatch b = RandomTokenBatch(rng);
    const double tau = 0.2 + 0.05 * t;
    const Rows zc = Normalize(ToRows(b.clean)), zn = Normalize(ToRows(b.noisy));
    const double expected =
        ScalarInfoNce(zc, zn, b.cross, tau) + ScalarInfoNce(zc, zc, b.self, tau);
    const double got = SelectiveTokenLoss(b.clean, b.noisy, b.cross, b.self, Config(tau)).item();
    CHECK(std::abs(got - expected) < 1e-10);
  }
}

TEST_CASE("selective token loss structure") {
  Rng rng(1);
  TokenBatch b = RandomTokenBatch(rng);
  // The first pair's four aligned positions and the second pair's two.
  CHECK(b.cross.size() == 6);
  CHECK(b.self.size() == 6);

  // Identical sides give identical cross and self terms.
  Tensor z = RandomTensor({4, 3}, rng);
  Alignment same = Align({"a", "b", "c", "d"}, {"a", "b", "c", "d"});
  PairIndex cross = BatchPairIndex({same}, {{0, 4, 0, 4}}, kUncapped, 0);
  PairIndex self = SelfPairIndex(4, kUncapped, 0);
  Tensor zn = ad::L2NormalizeRows(z);
  const double self_term = InfoNce(zn, zn, self, 0.3).item();
  const double cross_term = InfoNce(zn, zn, cross, 0.3).item();
  CHECK(std::abs(self_term - cross_term) < 1e-14);
  CHECK(std::abs(SelectiveTokenLoss(z, z, cross, self, Config(0.3)).item() - 2 * self_term) <
        1e-12);

  // An empty cross index leaves only the self term.
  CHECK(std::abs(SelectiveTokenLoss(z, z, PairIndex{}, self, Config(0.3)).item() - self_term) <
        1e-14);
}

TEST_CASE("utterance loss examples") {
  Tensor one = Tensor::FromVector({1, 2}, {3, 4});
  CHECK(UtteranceLoss(one, one, Config(0.1)).item() == 0.0);
  Tensor h = Tensor::FromVector({2, 2}, {1, 0, 0, 1});
  CHECK(std::abs(UtteranceLoss(h, h, Config(1.0)).item() - kOrthonormalLoss) < 1e-12);

  Rng rng(4);
  Tensor a = RandomTensor({5, 3}, rng, -1, 1, false), b = RandomTensor({5, 3}, rng, -1, 1, false);
  const double base = UtteranceLoss(a, b, Config(0.4)).item();
  std::vector<std::int64_t> perm = {3, 0, 4, 1, 2};
  const double permuted =
      UtteranceLoss(ad::GatherRows(a, perm), ad::GatherRows(b, perm), Config(0.4)).item();
  CHECK(std::abs(base - permuted) < 1e-12);
  const double scalar = ScalarInfoNce(Normalize(ToRows(a)), Normalize(ToRows(b)),
                                      DiagonalPairIndex(5), 0.4);
  CHECK(std::abs(base - scalar) < 1e-12);
}

TEST_CASE("selective token loss is invariant to batch order") {
  Rng rng(8);
  const std::vector<std::string> c0 = {"a", "b", "c"}, n0 = {"a", "x", "c", "d"};
  const std::vector<std::string> c1 = {"e", "f"}, n1 = {"f"};
  Tensor ca = RandomTensor({3, 4}, rng), cb = RandomTensor({2, 4}, rng);
  Tensor na = RandomTensor({4, 4}, rng), nb = RandomTensor({1, 4}, rng);
  auto value = [&](bool swapped) {
    std::vector<Alignment> als = {Align(c0, n0), Align(c1, n1)};
    std::vector<TokenOffsets> offs = {{0, 3, 0, 4}, {3, 2, 4, 1}};
    Tensor clean = ad::ConcatRows({ca, cb}), noisy = ad::ConcatRows({na, nb});
    if (swapped) {
      std::swap(als[0], als[1]);
      offs = {{0, 2, 0, 1}, {2, 3, 1, 4}};
      clean = ad::ConcatRows({cb, ca});
      noisy = ad::ConcatRows({nb, na});
    }
    return SelectiveTokenLoss(clean, noisy, BatchPairIndex(als, offs, kUncapped, 0),
                              SelfPairIndex(5, kUncapped, 0), Config(0.3))
        .item();
  };
  CHECK(std::abs(value(false) - value(true)) < 1e-12);
}

TEST_CASE("combined contrastive loss") {
  Tensor sel = Tensor::Scalar(1.0), utt = Tensor::Scalar(2.0);
  CHECK(std::abs(CombinedContrastiveLoss(sel, utt, 0.7).item() - 1.3) < 1e-12);
  CHECK(CombinedContrastiveLoss(sel, utt, 1.0).item() == 1.0);
  CHECK(CombinedContrastiveLoss(sel, utt, 0.0).item() == 2.0);
  CHECK_THROWS_AS(CombinedContrastiveLoss(sel, utt, 1.5), ConfigError);
}

TEST_CASE("combined gradient is the weighted sum of gradients") {
  for (int t = 0; t < 10; ++t) {
    Rng rng(200 + t);
    TokenBatch b = RandomTokenBatch(rng);
    Tensor cls_c = RandomTensor({2, 5}, rng), cls_n = RandomTensor({2, 5}, rng);
    const double lam = 0.7;
    auto grads = [&](int which) {
      for (Tensor* x : {&b.clean, &b.noisy, &cls_c, &cls_n}) x->ZeroGrad();
      Tensor sel = SelectiveTokenLoss(b.clean, b.noisy, b.cross, b.self, Config(0.3));
      Tensor utt = UtteranceLoss(cls_c, cls_n, Config(0.3));
      Tensor loss = which == 0 ? CombinedContrastiveLoss(sel, utt, lam) : which == 1 ? sel : utt;
      loss.Backward();
      std::vector<double> out;
      for (Tensor* x : {&b.clean, &b.noisy, &cls_c, &cls_n}) {
        for (std::int64_t i = 0; i < x->numel(); ++i) out.push_back(x->has_grad() ? x->grad()[i] : 0.0);
      }
      return out;
    };
    const auto g = grads(0), gs = grads(1), gu = grads(2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(g[i] - (lam * gs[i] + (1 - lam) * gu[i])) < 1e-10);
    }
  }
}

TEST_CASE("consistency loss examples") {
  Tensor v = Tensor::FromVector({1, 2}, {0.3, -0.2});
  Tensor p = Tensor::FromVector({1, 3}, {0.2, 0.3, 0.5});
  CHECK(ConsistencyLoss(v, v, p, p, 0.5).item() == 0.0);
  Tensor zero = Tensor::FromVector({1, 2}, {0, 0}), ones = Tensor::FromVector({1, 2}, {1, 1});
  CHECK(ConsistencyLoss(zero, ones, p, p, 1.0).item() == 1.0);
  Tensor q = Tensor::FromVector({1, 3}, {0.5, 0.3, 0.2});
  const double l = std::log(0.2) - std::log(0.5);
  CHECK(std::abs(ConsistencyLoss(v, v, p, q, 0.0).item() - 2.0 * l * l / 3.0) < 1e-12);
  // A zero probability is floored rather than rejected.
  Tensor hard = Tensor::FromVector({1, 3}, {0.0, 0.5, 0.5});
  CHECK(std::isfinite(ConsistencyLoss(v, v, hard, p, 0.0).item()));
  CHECK_THROWS_AS(ConsistencyLoss(v, v, p, p, 1.2), ConfigError);
  CHECK_THROWS_AS(ConsistencyLoss(v, ones.Detach(), p, Tensor::FromVector({1, 2}, {0.5, 0.5}), 0.5),
                  DimensionError);
}

TEST_CASE("consistency loss decreases as the projection approaches its target") {
  Rng rng(6);
  Tensor vc = RandomTensor({2, 4}, rng, -1, 1, false);
  Tensor start = RandomTensor({2, 4}, rng, -1, 1, false);
  Tensor p = ad::Softmax(RandomTensor({2, 3}, rng, -1, 1, false), -1);
  Tensor ph = ad::Softmax(RandomTensor({2, 3}, rng, -1, 1, false), -1);
  double previous = INFINITY;
  for (double s = 0.0; s <= 1.0; s += 0.1) {
    Tensor vh = ad::Add(ad::Scale(start, 1.0 - s), ad::Scale(vc, s));
    const double v = ConsistencyLoss(vc, vh, p, ph, 0.5).item();
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("consistency loss sends no gradient to the targets") {
  Rng rng(7);
  Tensor vc = RandomTensor({2, 4}, rng), vh = RandomTensor({2, 4}, rng);
  Tensor lc = RandomTensor({2, 3}, rng), lh = RandomTensor({2, 3}, rng);
  ConsistencyLoss(vc, vh, ad::Softmax(lc, -1), ad::Softmax(lh, -1), 0.5).Backward();
  CHECK_FALSE(vc.has_grad());
  CHECK_FALSE(lc.has_grad());
  CHECK(vh.has_grad());
  CHECK(lh.has_grad());
}

TEST_CASE("cross entropy") {
  Tensor uniform = Tensor::Zeros({1, 4});
  CHECK(std::abs(CrossEntropy(uniform, {2}).item() - std::log(4.0)) < 1e-12);
  Tensor sure = Tensor::FromVector({1, 2}, {50.0, 0.0});
  CHECK(CrossEntropy(sure, {0}).item() < 1e-20);
  CHECK_THROWS_AS(CrossEntropy(uniform, {4}), ContractError);
  CHECK_THROWS_AS(CrossEntropy(uniform, {-1}), ContractError);

  for (int t = 0; t < 20; ++t) {
    Rng rng(t);
    Tensor logits = RandomTensor({3, 5}, rng, -4, 4, false);
    std::vector<std::int64_t> labels = {t % 5, (t + 2) % 5, (t + 4) % 5};
    double expected = 0.0;
    for (int r = 0; r < 3; ++r) {
      double z = 0.0;
      for (int c = 0; c < 5; ++c) z += std::exp(logits.at(r, c));
      expected += -std::log(std::exp(logits.at(r, labels[r])) / z);
    }
    CHECK(std::abs(CrossEntropy(logits, labels).item() - expected / 3.0) < 1e-12);
  }
}

TEST_CASE("every loss passes gradient checks") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    for (const auto& [name, report] : testing::LossGradChecks(300 + t)) {
      INFO(name << ": " << report.Summary());
      CHECK(report.passed());
    }
  }
}

TEST_CASE("encoder pipeline passes gradient checks") {
  for (const auto& [name, report] : testing::EncoderPipelineGradChecks()) {
    INFO(name << ": " << report.Summary());
    CHECK(report.checked > 0);
    CHECK(report.passed());
  }
}

}  // namespace
}  // namespace rslu
