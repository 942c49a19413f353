// tests/autodiff_test.cc
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

#include <cmath>
#include <functional>

#include "rslu/autodiff/attention.h"
#include "rslu/autodiff/grad_check.h"
#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "test_util.h"

namespace rslu {
namespace {

using ad::Tensor;
using testing::RandomTensor;

// Contracts op(x) with fixed random weights so every output entry matters.
Tensor Contract(const Tensor& y, std::uint64_t seed) {
  Rng rng(seed);
  return ad::Sum(ad::Mul(y, RandomTensor(y.shape(), rng, -1.0, 1.0, false)));
}

void CheckUnary(const std::function<Tensor(const Tensor&)>& op, const ad::Shape& shape,
                double lo, double hi, double tol, int trials = 20) {
  for (int t = 0; t < trials; ++t) {
    Rng rng(1000 + t);
    Tensor x = RandomTensor(shape, rng, lo, hi);
    ad::GradCheckOptions opts;
    opts.tol = tol;
    auto report = ad::FiniteDiffCheck([&](const Tensor& v) { return Contract(op(v), 77 + t); }, x,
                                      opts);
    INFO(report.Summary());
    CHECK(report.passed());
  }
}

TEST_CASE("elementwise basics") {
  Tensor a = Tensor::FromVector({2}, {1, 2});
  Tensor b = Tensor::FromVector({2}, {3, 4});
  Tensor c = ad::Add(a, b);
  CHECK(c.at(0) == 4.0);
  CHECK(c.at(1) == 6.0);

  Tensor x = Tensor::FromVector({1}, {3}, true);
  Tensor loss = ad::Sum(ad::Square(x));
  loss.Backward();
  CHECK(x.grad()[0] == doctest::Approx(6.0));

  Tensor e = ad::Log(Tensor::FromVector({1}, {std::exp(1.0)}));
  CHECK(std::abs(e.at(0) - 1.0) < 1e-12);
}

TEST_CASE("elementwise errors") {
  Tensor a = Tensor::FromVector({2}, {1, 2});
  Tensor b = Tensor::FromVector({3}, {1, 2, 3});
  CHECK_THROWS_AS(ad::Add(a, b), DimensionError);
  Tensor bad = Tensor::FromVector({3}, {1.0, -2.0, 3.0});
  try {
    ad::Log(bad);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.index() == 1);
  }
  // Scalar broadcasting is the only broadcast allowed.
  Tensor s = Tensor::Scalar(2.0);
  CHECK(ad::Mul(a, s).at(1) == 4.0);
}

TEST_CASE("matmul values and errors") {
  Tensor eye = Tensor::FromVector({2, 2}, {1, 0, 0, 1});
  Tensor m = Tensor::FromVector({2, 2}, {1, 2, 3, 4});
  Tensor p = ad::MatMul(eye, m);
  for (int i = 0; i < 4; ++i) CHECK(p.at(i) == m.at(i));
  Tensor dot = ad::MatMul(Tensor::FromVector({1, 2}, {1, 2}), Tensor::FromVector({2, 1}, {3, 4}));
  CHECK(dot.item() == 11.0);
  CHECK_THROWS_AS(ad::MatMul(Tensor::Zeros({3, 4}), Tensor::Zeros({3, 2})), DimensionError);
}

TEST_CASE("matmul gradients match central differences") {
  for (int t = 0; t < 20; ++t) {
    Rng rng(t);
    Tensor a = RandomTensor({3, 4}, rng);
    Tensor b = RandomTensor({4, 2}, rng);
    ad::GradCheckOptions opts;
    opts.tol = 1e-6;
    auto report = ad::FiniteDiffCheck([&] { return Contract(ad::MatMul(a, b), 5 + t); }, {a, b},
                                      opts);
    INFO(report.Summary());
    CHECK(report.passed());
  }
}

TEST_CASE("reductions and activations") {
  Tensor z = Tensor::FromVector({3}, {0, 0, 0});
  Tensor s = ad::Softmax(z, 0);
  for (int i = 0; i < 3; ++i) CHECK(s.at(i) == doctest::Approx(1.0 / 3.0));
  CHECK(ad::Mean(Tensor::FromVector({3}, {2, 4, 6})).item() == 4.0);
  CHECK_THROWS_AS(ad::Sum(Tensor::Zeros({2, 3}), 2), DimensionError);
  CHECK_THROWS_AS(ad::ApplyAxisOp(ad::AxisOp::kSoftmax, Tensor::Zeros({2, 3}), -3),
                  DimensionError);
}

TEST_CASE("softmax rows sum to one and log_softmax matches log of softmax") {
  for (int t = 0; t < 20; ++t) {
    Rng rng(300 + t);
    Tensor x = RandomTensor({4, 7}, rng, -20.0, 20.0, false);
    Tensor s = ad::Softmax(x, -1);
    Tensor ls = ad::LogSoftmax(x, -1);
    for (int r = 0; r < 4; ++r) {
      double sum = 0.0;
      for (int c = 0; c < 7; ++c) {
        sum += s.at(r, c);
        CHECK(std::abs(std::log(s.at(r, c)) - ls.at(r, c)) < 1e-9);
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("layer norm matches its definition") {
  Tensor x = Tensor::FromVector({1, 4}, {1, 2, 3, 4});
  Tensor y = ad::LayerNorm(x);
  const double mean = 2.5, var = 1.25;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(y.at(i) - (x.at(i) - mean) / std::sqrt(var + 1e-5)) < 1e-12);
  }
}

TEST_CASE("backward basics") {
  Tensor x = Tensor::FromVector({3}, {1, 2, 3}, true);
  ad::Sum(x).Backward();
  for (int i = 0; i < 3; ++i) CHECK(x.grad()[i] == 1.0);

  Tensor y = Tensor::FromVector({2}, {1, 2}, true);
  ad::Mean(ad::Square(y)).Backward();
  CHECK(y.grad()[0] == doctest::Approx(1.0));
  CHECK(y.grad()[1] == doctest::Approx(2.0));
}

TEST_CASE("backward errors") {
  Tensor x = Tensor::FromVector({3}, {1, 2, 3}, true);
  Tensor v = ad::Square(x);
  CHECK_THROWS_AS(v.Backward(), ContractError);
  Tensor loss = ad::Sum(v);
  loss.Backward();
  CHECK_THROWS_AS(loss.Backward(), StateError);
  // A new loss built on the consumed intermediate is also rejected.
  Tensor again = ad::Sum(v);
  CHECK_THROWS_AS(again.Backward(), StateError);
  Tensor constant = ad::Sum(Tensor::FromVector({2}, {1, 2}));
  CHECK_THROWS_AS(constant.Backward(), ContractError);
}

TEST_CASE("gradients accumulate until zeroed") {
  Tensor x = Tensor::FromVector({2}, {1, 2}, true);
  ad::Sum(x).Backward();
  ad::Sum(x).Backward();
  CHECK(x.grad()[0] == 2.0);
  x.ZeroGrad();
  CHECK_FALSE(x.has_grad());
  ad::Sum(x).Backward();
  CHECK(x.grad()[0] == 1.0);
}

TEST_CASE("every reachable leaf gets a gradient, shared nodes visited once") {
  Tensor x = Tensor::FromVector({2}, {0.5, -1.5}, true);
  Tensor h = ad::Square(x);
  Tensor loss = ad::Sum(ad::Add(h, h));  // h used twice
  loss.Backward();
  CHECK(x.grad()[0] == doctest::Approx(4.0 * 0.5));
  CHECK(x.grad()[1] == doctest::Approx(4.0 * -1.5));
  CHECK(x.grad().size() == x.values().size());
}

TEST_CASE("finite difference checker") {
  Tensor x = Tensor::FromVector({1}, {3.0}, true);
  auto report = ad::FiniteDiffCheck([](const Tensor& v) { return ad::Sum(ad::Square(v)); }, x);
  CHECK(report.max_rel_error < 1e-8);

  int calls = 0;
  auto noisy = [&](const Tensor& v) {
    ++calls;
    return ad::AddScalar(ad::Sum(v), static_cast<double>(calls));
  };
  CHECK_THROWS_AS(ad::FiniteDiffCheck(noisy, x), ContractError);
}

TEST_CASE("linear ops pass gradient checks at 1e-6") {
  const double tol = 1e-6;
  CheckUnary([](const Tensor& x) { return ad::Add(x, x); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Sub(x, ad::Scale(x, 0.5)); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Neg(x); }, {5}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Transpose(x); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Sum(x, 0); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Mean(x, 1); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Reshape(x, {4, 3}); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::TileRows(x, 3); }, {4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::SliceRows(x, 1, 2); }, {4, 3}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::ConcatRows({x, ad::Scale(x, 2.0)}); }, {2, 3}, -1,
             1, tol);
  CheckUnary([](const Tensor& x) { return ad::GatherRows(x, {2, 0, -1, 2}); }, {3, 4}, -1, 1,
             tol);
  CheckUnary([](const Tensor& x) { return ad::PickPerRow(x, {0, 3, 1}); }, {3, 4}, -1, 1, tol);
}

TEST_CASE("nonlinear ops pass gradient checks at 1e-4") {
  const double tol = 1e-4;
  CheckUnary([](const Tensor& x) { return ad::Mul(x, ad::Exp(x)); }, {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Div(ad::Exp(x), ad::AddScalar(ad::Square(x), 1.0)); },
             {3, 4}, -1, 1, tol);
  CheckUnary([](const Tensor& x) { return ad::Log(x); }, {3, 4}, 0.5, 2.0, tol);
  CheckUnary([](const Tensor& x) { return ad::Sqrt(x); }, {3, 4}, 0.5, 2.0, tol);
  CheckUnary([](const Tensor& x) { return ad::Gelu(x); }, {3, 4}, -3, 3, tol);
  CheckUnary([](const Tensor& x) { return ad::Softmax(x, -1); }, {3, 5}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::Softmax(x, 0); }, {3, 5}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::LogSoftmax(x, -1); }, {3, 5}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::LayerNorm(x); }, {3, 6}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::LayerNorm(x, 0); }, {4, 3}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::Max(x, 1); }, {3, 6}, -2, 2, tol);
  CheckUnary([](const Tensor& x) { return ad::L2NormalizeRows(x); }, {3, 4}, -2, 2, tol);
  CheckUnary(
      [](const Tensor& x) {
        return ad::LogSoftmaxOverSubsets(x, {{0, 2}, {1, 2, 3}, {3}}, {2, 0, 3});
      },
      {3, 4}, -2, 2, tol);
}

TEST_CASE("segment attention gradients and masking") {
  const std::vector<ad::AttentionSegment> segments = {{0, 4, 3}, {4, 3, 3}};
  for (int t = 0; t < 20; ++t) {
    Rng rng(500 + t);
    Tensor q = RandomTensor({7, 4}, rng);
    Tensor k = RandomTensor({7, 4}, rng);
    Tensor v = RandomTensor({7, 4}, rng);
    auto report = ad::FiniteDiffCheck(
        [&] { return Contract(ad::SegmentSelfAttention(q, k, v, segments, 2), 9 + t); },
        {q, k, v});
    INFO(report.Summary());
    CHECK(report.passed());
  }
  Rng rng(1);
  Tensor q = RandomTensor({7, 4}, rng, -1, 1, false);
  std::vector<double> weights;
  ad::SegmentSelfAttention(q, q, q, segments, 2, &weights);
  // Segment 0 (length 4, 3 valid keys): two heads of 4x4, key 3 masked.
  for (int h = 0; h < 2; ++h) {
    for (int i = 0; i < 4; ++i) {
      double sum = 0.0;
      for (int j = 0; j < 4; ++j) sum += weights[h * 16 + i * 4 + j];
      CHECK(weights[h * 16 + i * 4 + 3] == 0.0);
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("evaluation is bit-deterministic") {
  Rng rng(3);
  Tensor x = RandomTensor({4, 6}, rng);
  auto run = [&] { return ad::Sum(ad::Gelu(ad::LayerNorm(ad::MatMul(x, ad::Transpose(x))))).item(); };
  const double a = run();
  CHECK(run() == a);
}

TEST_CASE("dropout is identity at rate zero and seeded otherwise") {
  Rng rng(4);
  Tensor x = RandomTensor({3, 3}, rng);
  Rng d1(9), d2(9);
  CHECK(ad::Dropout(x, 0.0, d1).id() == x.id());
  Tensor a = ad::Dropout(x, 0.5, d1);
  Tensor b = ad::Dropout(x, 0.5, d2);
  for (int i = 0; i < 9; ++i) {
    CHECK(a.at(i) == b.at(i));
    CHECK((a.at(i) == 0.0 || std::abs(a.at(i) - 2.0 * x.at(i)) < 1e-15));
  }
}

}  // namespace
}  // namespace rslu
