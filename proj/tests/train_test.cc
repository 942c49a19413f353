// tests/train_test.cc
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

#include "data_fixtures.h"
#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "rslu/train/ablation.h"
#include "rslu/train/optimizer.h"
#include "rslu/train/trainer.h"

namespace rslu {
namespace {

using testing::NoisyCorpus;
using testing::Resolved;
using testing::TinyTrainConfig;

std::vector<double> Values(const ad::Tensor& t) {
  return {t.values().begin(), t.values().end()};
}

const PreparedData& SmallData() {
  static const PreparedData data = PrepareData(NoisyCorpus(120, 30, 30, 0.3), 1, 16);
  return data;
}

const PreparedData& CleanData() {
  static const PreparedData data = PrepareData(NoisyCorpus(120, 30, 30, 0.0), 1, 16);
  return data;
}

TEST_CASE("zero epochs leave the initial parameters") {
  const PreparedData& d = SmallData();
  TrainConfig c = Resolved(TinyTrainConfig(Method::kCcl), d);
  c.stage1.epochs = 0;
  c.stage2.epochs = 0;
  const TrainOutcome out = TrainMethod(c, d.train, d.valid);
  const NetworkPair init = InitNetworks(c.encoder);
  CHECK(out.steps == 0);
  CHECK(ParameterDigest(out.inference()) == ParameterDigest(init.inference));
  REQUIRE(out.reference() != nullptr);
  CHECK(ParameterDigest(*out.reference()) == ParameterDigest(init.reference));
}

TEST_CASE("training is deterministic for a fixed seed") {
  const PreparedData& d = SmallData();
  for (Method m : {Method::kCcl, Method::kCnCe}) {
    const TrainConfig c = Resolved(TinyTrainConfig(m, 3), d);
    const TrainOutcome a = TrainMethod(c, d.train, d.valid);
    const TrainOutcome b = TrainMethod(c, d.train, d.valid);
    CHECK(ParameterDigest(a.inference()) == ParameterDigest(b.inference()));
    CHECK(a.log.Deterministic() == b.log.Deterministic());
    CHECK(a.steps == b.steps);
  }
  const TrainOutcome x = TrainMethod(Resolved(TinyTrainConfig(Method::kCcl, 3), d), d.train, d.valid);
  const TrainOutcome y = TrainMethod(Resolved(TinyTrainConfig(Method::kCcl, 4), d), d.train, d.valid);
  CHECK(ParameterDigest(x.inference()) != ParameterDigest(y.inference()));
}

TEST_CASE("stage-1 contrastive loss decreases") {
  const PreparedData d = PrepareData(NoisyCorpus(200, 0, 0, 0.3), 1, 16);
  TrainConfig c = Resolved(TinyTrainConfig(Method::kCcl), d);
  c.stage1.epochs = 6;
  Trainer trainer(c);
  NetworkPair pair = InitNetworks(c.encoder);
  trainer.RunStage1(pair, d.train);
  const double first = trainer.log().MeanStepValue("stage1", 0, "l_ctr");
  const double later = trainer.log().MeanStepValue("stage1", 5, "l_ctr");
  CHECK(std::isfinite(first));
  CHECK(later < first);
  // Steps per epoch: ceil(200 / 16).
  CHECK(trainer.steps() == 6 * 13);
}

TEST_CASE("stage-2 updates touch one network at a time") {
  const PreparedData& d = SmallData();
  TrainConfig c = Resolved(TinyTrainConfig(Method::kCcl), d);
  c.stage1.epochs = 1;
  std::string ref_before, inf_before;
  std::int64_t checked = 0;
  bool ref_moved = false, inf_moved = false;
  auto observer = [&](const StepEvent& e) {
    const std::string ref = ParameterDigest(*e.reference);
    const std::string inf = ParameterDigest(*e.inference);
    switch (e.phase) {
      case StepPhase::kStage2Begin:
        break;
      case StepPhase::kAfterReferenceUpdate:
        CHECK(inf == inf_before);
        ref_moved = ref_moved || ref != ref_before;
        ++checked;
        break;
      case StepPhase::kAfterInferenceUpdate:
        CHECK(ref == ref_before);
        inf_moved = inf_moved || inf != inf_before;
        ++checked;
        break;
    }
    ref_before = ref;
    inf_before = inf;
  };
  const TrainOutcome out = TrainMethod(c, d.train, d.valid, observer);
  CHECK(checked > 0);
  CHECK(ref_moved);
  CHECK(inf_moved);
}

TEST_CASE("clean-CE never reads noisy text and CN-CE sees both sides") {
  const PreparedData& d = SmallData();
  d.train.ResetAudit();
  d.valid.ResetAudit();
  TrainMethod(Resolved(TinyTrainConfig(Method::kCleanCe), d), d.train, d.valid);
  CHECK(d.train.noisy_reads() == 0);
  CHECK(d.valid.noisy_reads() == 0);
  CHECK(d.train.clean_reads() > 0);

  TrainConfig c = Resolved(TinyTrainConfig(Method::kCnCe), d);
  Trainer trainer(c);
  Network net(c.encoder);
  trainer.RunSupervised(net, d.train, {InputSide::kClean, InputSide::kNoisy}, d.valid,
                        InputSide::kNoisy);
  CHECK(trainer.last_epoch_records() == 2 * static_cast<std::int64_t>(d.train.size()));
  bool counted = false;
  for (const auto& r : trainer.log().records()) {
    if (r["type"] == "epoch") {
      CHECK(r["records"] == 2 * d.train.size());
      counted = true;
    }
  }
  CHECK(counted);
}

TEST_CASE("noisy-CE equals clean-CE when the noisy side is clean") {
  const PreparedData& d = CleanData();
  const TrainOutcome a = TrainMethod(Resolved(TinyTrainConfig(Method::kCleanCe, 2), d), d.train, d.valid);
  const TrainOutcome b = TrainMethod(Resolved(TinyTrainConfig(Method::kNoisyCe, 2), d), d.train, d.valid);
  CHECK(ParameterDigest(a.inference()) == ParameterDigest(b.inference()));
  CHECK(a.best_valid_accuracy == b.best_valid_accuracy);
}

TEST_CASE("simultaneous update starts from a zero consistency loss on identical inputs") {
  const PreparedData& d = CleanData();
  TrainConfig c = Resolved(TinyTrainConfig(Method::kCcl), d);
  c.stage1.epochs = 0;
  c.stage2.simultaneous_update = true;
  c.encoder.dropout_rate = 0.0;
  const TrainOutcome out = TrainMethod(c, d.train, d.valid);
  bool seen = false;
  for (const auto& r : out.log.records()) {
    if (r["type"] == "step" && r["stage"] == "stage2") {
      CHECK(r["l_con"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
      seen = true;
      break;
    }
  }
  CHECK(seen);

  // With targets taken after the reference update the first loss is positive.
  c.stage2.simultaneous_update = false;
  const TrainOutcome seq = TrainMethod(c, d.train, d.valid);
  for (const auto& r : seq.log.records()) {
    if (r["type"] == "step" && r["stage"] == "stage2") {
      CHECK(r["l_con"].get<double>() > 0.0);
      break;
    }
  }
}

TEST_CASE("adam skips absent and zero gradients") {
  ad::Tensor a = ad::Tensor::FromVector({2}, {1.0, -2.0}, true);
  ad::Tensor b = ad::Tensor::FromVector({2}, {3.0, 4.0}, true);
  Adam adam({a, b}, AdamConfig{});
  ad::Sum(ad::Scale(a, 0.0)).Backward();
  CHECK(adam.GradNorm() == 0.0);
  adam.Step();
  CHECK(Values(a) == std::vector<double>{1.0, -2.0});
  CHECK(Values(b) == std::vector<double>{3.0, 4.0});

  adam.ZeroGrad();
  ad::Sum(a).Backward();
  CHECK(adam.GradNorm() == doctest::Approx(std::sqrt(2.0)));
  adam.Step();
  // Second step: the zero gradient of step one left both moments at zero.
  const double m_hat = 0.1 / (1.0 - 0.9 * 0.9);
  const double v_hat = 0.001 / (1.0 - 0.999 * 0.999);
  const double move = 1e-3 * m_hat / (std::sqrt(v_hat) + 1e-8);
  CHECK(a.at(0) == doctest::Approx(1.0 - move).epsilon(1e-12));
  CHECK(a.at(1) == doctest::Approx(-2.0 - move).epsilon(1e-12));

  // A fresh optimizer's first bias-corrected step moves by lr.
  ad::Tensor c = ad::Tensor::FromVector({1}, {5.0}, true);
  Adam fresh({c}, AdamConfig{});
  ad::Sum(ad::Scale(c, 3.0)).Backward();
  fresh.Step();
  CHECK(c.at(0) == doctest::Approx(5.0 - 1e-3 * 3.0 / (3.0 + 1e-8)).epsilon(1e-12));
  CHECK(Values(b) == std::vector<double>{3.0, 4.0});
}

TEST_CASE("train config json") {
  const TrainConfig c = TinyTrainConfig(Method::kCnCe, 9);
  const TrainConfig back = TrainConfig::FromJson(c.ToJson());
  CHECK(back.ToJson() == c.ToJson());
  CHECK(TrainConfig::FromJson(nlohmann::json::object()).ToJson() == TrainConfig{}.ToJson());
  CHECK_THROWS_AS(TrainConfig::FromJson({{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(TrainConfig::FromJson({{"stage1", {{"lr", "fast"}}}}), ConfigError);
  CHECK_THROWS_AS(TrainConfig::FromJson({{"method", "svm"}}), ConfigError);
  try {
    TrainConfig::FromJson({{"stage2", {{"nope", true}}}});
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stage2.nope") != std::string::npos);
  }
  TrainConfig bad;
  bad.stage2.lambda_con = 1.5;
  CHECK_THROWS_AS(bad.Validate(), ConfigError);
  TrainConfig flags;
  flags.method = Method::kNoisyCe;
  flags.stage2.simultaneous_update = true;
  CHECK_THROWS_AS(flags.Validate(), ConfigError);
  CHECK(ParseMethod("ccl") == Method::kCcl);
  CHECK(MethodName(Method::kCnCe) == "cn_ce");
}

TEST_CASE("divergence raises a training error") {
  const PreparedData& d = SmallData();
  TrainConfig c = Resolved(TinyTrainConfig(Method::kNoisyCe), d);
  c.stage2.lr = 1e300;
  CHECK_THROWS_AS(TrainMethod(c, d.train, d.valid), TrainingError);
}

TEST_CASE("ablation grid layout") {
  const auto cells = AblationCells();
  REQUIRE(cells.size() == 8);
  for (std::size_t i = 0; i < 4; ++i) CHECK_FALSE(cells[i].use_con);
  for (std::size_t i = 4; i < 8; ++i) CHECK(cells[i].use_con);
  const TrainConfig base = TinyTrainConfig(Method::kCcl, 5);
  AblationCell full;
  full.use_con = full.use_sel = full.use_utt = true;
  CHECK(full.Name() == "con+sel+utt");
  CHECK(CellConfig(base, full).ToJson() == base.ToJson());
  AblationCell ce;
  CHECK(ce.Name() == "ce");
  const TrainConfig plain = CellConfig(base, ce);
  CHECK_FALSE(plain.stage1.enabled());
  CHECK(plain.stage2.use_ce_instead_of_con);
}

}  // namespace
}  // namespace rslu
