// src/train/trainer.cc
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

#include "rslu/train/trainer.h"

#include <chrono>
#include <cmath>

#include "rslu/align/pair_index.h"
#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "rslu/common/random.h"
#include "rslu/corpus/tokenizer.h"
#include "rslu/eval/analysis.h"
#include "rslu/losses/consistency.h"
#include "rslu/losses/contrastive.h"
#include "rslu/train/optimizer.h"

namespace rslu {

namespace {

// Dropout stream tags, one per forward role.
enum : std::uint64_t {
  kStage1Reference = 1,
  kStage1Inference = 2,
  kStage2Reference = 3,
  kStage2Inference = 4,
  kSupervised = 5,
  kCrossNegatives = 6,
  kSelfNegatives = 7,
};

using Snapshot = std::vector<std::vector<double>>;

Snapshot Take(const Network& net) {
  Snapshot s;
  for (const NamedParameter& p : net.parameters()) {
    s.emplace_back(p.value.values().begin(), p.value.values().end());
  }
  return s;
}

void Restore(const Network& net, const Snapshot& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    ad::Tensor t = net.parameters()[k].value;
    std::copy(s[k].begin(), s[k].end(), t.mutable_values().begin());
  }
}

double Accuracy(const Network& net, const EncodedDataset& data, InputSide side) {
  const std::vector<std::int64_t> pred = PredictIntents(net, data, side);
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == data.label(i);
  return pred.empty() ? 0.0 : static_cast<double>(correct) / pred.size();
}

AdamConfig WithLr(double lr) {
  AdamConfig a;
  a.lr = lr;
  return a;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Tracks the best validation accuracy and decides when to stop.
class EarlyStopper {
 public:
  EarlyStopper(int patience, std::vector<const Network*> nets)
      : patience_(patience), nets_(std::move(nets)) {}

  // Returns true when training should stop.
  bool Update(double accuracy, int epoch) {
    if (best_epoch_ < 0 || accuracy > best_) {
      best_ = accuracy;
      best_epoch_ = epoch;
      since_best_ = 0;
      snapshots_.clear();
      for (const Network* n : nets_) snapshots_.push_back(Take(*n));
      return false;
    }
    return ++since_best_ >= patience_;
  }

  void RestoreBest() const {
    for (std::size_t i = 0; i < snapshots_.size(); ++i) Restore(*nets_[i], snapshots_[i]);
  }

  double best() const { return best_; }
  int best_epoch() const { return best_epoch_; }

 private:
  int patience_;
  std::vector<const Network*> nets_;
  std::vector<Snapshot> snapshots_;
  double best_ = 0.0;
  int best_epoch_ = -1;
  int since_best_ = 0;
};

}  // namespace

std::string TrainLog::ToJsonl() const {
  std::string out;
  for (const nlohmann::json& r : records_) out += r.dump() + "\n";
  return out;
}

double TrainLog::MeanStepValue(const std::string& stage, int epoch, const std::string& key) const {
  double sum = 0.0;
  int n = 0;
  for (const nlohmann::json& r : records_) {
    if (r.value("type", "") == "step" && r.value("stage", "") == stage &&
        r.value("epoch", -1) == epoch && r.contains(key)) {
      sum += r[key].get<double>();
      ++n;
    }
  }
  if (n == 0) throw ContractError("no " + key + " records for " + stage + " epoch " +
                                  std::to_string(epoch));
  return sum / n;
}

std::vector<nlohmann::json> TrainLog::Deterministic() const {
  std::vector<nlohmann::json> out = records_;
  for (nlohmann::json& r : out) r.erase("wall_s");
  return out;
}

const Network& TrainOutcome::inference() const {
  for (const auto& [role, net] : networks) {
    if (role == "inference") return net;
  }
  throw StateError("training outcome has no inference network");
}

const Network* TrainOutcome::reference() const {
  for (const auto& [role, net] : networks) {
    if (role == "reference") return &net;
  }
  return nullptr;
}

Trainer::Trainer(TrainConfig config) : config_(std::move(config)) {
  config_.Validate();
  config_.encoder.Validate();
}

std::vector<std::vector<std::size_t>> Trainer::Batches(std::size_t n, const std::string& stage,
                                                       int epoch) const {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(MixSeeds(config_.seed, StableHash(stage), static_cast<std::uint64_t>(epoch)));
  Shuffle(order, rng);
  std::vector<std::vector<std::size_t>> batches;
  const std::size_t bs = static_cast<std::size_t>(config_.batch_size);
  for (std::size_t start = 0; start < n; start += bs) {
    batches.emplace_back(order.begin() + start, order.begin() + std::min(n, start + bs));
  }
  return batches;
}

void Trainer::CheckFinite(double value, const std::string& what,
                          const std::vector<std::size_t>& batch,
                          const EncodedDataset& data) const {
  if (std::isfinite(value)) return;
  std::string dump = what + " is not finite at step " + std::to_string(step_) + "; batch:";
  for (std::size_t i : batch) {
    const std::size_t k = i % data.size();
    dump += "\n  " + data.id(k) + " | " + JoinTokens(data.Clean(k).tokens) + " | " +
            JoinTokens(data.Noisy(k).tokens);
  }
  throw TrainingError(dump);
}

void Trainer::RunStage1(NetworkPair& pair, const EncodedDataset& train) {
  if (!config_.stage1.enabled() || train.size() == 0) return;
  const Stage1Config& s1 = config_.stage1;
  std::vector<ad::Tensor> params = pair.reference.EncoderParameters();
  for (const ad::Tensor& t : pair.inference.EncoderParameters()) params.push_back(t);
  Adam adam(params, WithLr(s1.lr));
  const auto start = std::chrono::steady_clock::now();
  for (int epoch = 0; epoch < s1.epochs; ++epoch) {
    double loss_sum = 0.0;
    int n_batches = 0;
    for (const std::vector<std::size_t>& batch : Batches(train.size(), "stage1", epoch)) {
      std::vector<const TokenSequence*> clean, noisy;
      std::vector<Alignment> alignments;
      for (std::size_t i : batch) {
        clean.push_back(&train.Clean(i));
        noisy.push_back(&train.Noisy(i));
        alignments.push_back(train.alignment(i));
      }
      Rng ref_rng(MixSeeds(config_.seed, step_, kStage1Reference));
      Rng inf_rng(MixSeeds(config_.seed, step_, kStage1Inference));
      ForwardOptions ref_opts, inf_opts;
      ref_opts.train = inf_opts.train = true;
      ref_opts.dropout_rng = &ref_rng;
      inf_opts.dropout_rng = &inf_rng;
      const BatchEncoding enc_c = pair.reference.Encode(clean, ref_opts);
      const BatchEncoding enc_n = pair.inference.Encode(noisy, inf_opts);

      nlohmann::json record = {{"type", "step"}, {"stage", "stage1"}, {"step", step_},
                               {"epoch", epoch}};
      ad::Tensor l_sel, l_utt, loss;
      if (s1.use_sel) {
        std::vector<TokenOffsets> offsets;
        for (std::size_t b = 0; b < batch.size(); ++b) {
          offsets.push_back({enc_c.TokenOffset(b), enc_c.true_length(b), enc_n.TokenOffset(b),
                             enc_n.true_length(b)});
        }
        const PairIndex cross =
            BatchPairIndex(alignments, offsets, s1.contrastive.n_neg_max,
                           MixSeeds(config_.seed, step_, kCrossNegatives));
        const PairIndex self = SelfPairIndex(enc_c.total_tokens(), s1.contrastive.n_neg_max,
                                             MixSeeds(config_.seed, step_, kSelfNegatives));
        l_sel = SelectiveTokenLoss(enc_c.TokenRows(), enc_n.TokenRows(), cross, self,
                                   s1.contrastive);
        record["l_sel"] = l_sel.item();
      }
      if (s1.use_utt) {
        l_utt = UtteranceLoss(enc_c.ClsRows(), enc_n.ClsRows(), s1.contrastive);
        record["l_utt"] = l_utt.item();
      }
      if (s1.use_sel && s1.use_utt) {
        loss = CombinedContrastiveLoss(l_sel, l_utt, s1.contrastive.lambda_ctr);
      } else {
        loss = s1.use_sel ? l_sel : l_utt;
      }
      record["l_ctr"] = loss.item();
      CheckFinite(loss.item(), "l_ctr", batch, train);
      if (loss.requires_grad()) loss.Backward();
      record["grad_norm"] = adam.GradNorm();
      adam.Step();
      adam.ZeroGrad();
      log_.Add(record);
      loss_sum += loss.item();
      ++n_batches;
      ++step_;
    }
    log_.Add({{"type", "epoch"}, {"stage", "stage1"}, {"epoch", epoch},
              {"mean_l_ctr", loss_sum / n_batches}, {"wall_s", Seconds(start)}});
  }
}

void Trainer::RunStage2(NetworkPair& pair, const EncodedDataset& train,
                        const EncodedDataset& valid) {
  const Stage2Config& s2 = config_.stage2;
  Adam ref_adam(pair.reference.ParameterTensors(), WithLr(s2.lr));
  Adam inf_adam(pair.inference.ParameterTensors(), WithLr(s2.lr));
  EarlyStopper stopper(s2.patience, {&pair.reference, &pair.inference});
  const auto start = std::chrono::steady_clock::now();
  auto notify = [&](StepPhase phase) {
    if (observer_) observer_({phase, step_, &pair.reference, &pair.inference});
  };
  for (int epoch = 0; epoch < s2.epochs && train.size() > 0; ++epoch) {
    double ce_sum = 0.0, con_sum = 0.0;
    int n_batches = 0;
    for (const std::vector<std::size_t>& batch : Batches(train.size(), "stage2", epoch)) {
      notify(StepPhase::kStage2Begin);
      std::vector<const TokenSequence*> clean, noisy;
      std::vector<std::int64_t> labels;
      for (std::size_t i : batch) {
        clean.push_back(&train.Clean(i));
        noisy.push_back(&train.Noisy(i));
        labels.push_back(train.label(i));
      }
      auto targets = [&]() {
        const BatchEncoding enc = pair.reference.Encode(clean);
        return std::make_pair(pair.reference.Project(enc).Detach(),
                              pair.reference.Classify(enc).probs.Detach());
      };
      std::pair<ad::Tensor, ad::Tensor> early_targets;
      if (s2.simultaneous_update) early_targets = targets();

      // (a) reference network: CE on clean input.
      Rng ref_rng(MixSeeds(config_.seed, step_, kStage2Reference));
      ForwardOptions ref_opts;
      ref_opts.train = true;
      ref_opts.dropout_rng = &ref_rng;
      ad::Tensor ce =
          CrossEntropy(pair.reference.Classify(pair.reference.Encode(clean, ref_opts)).logits,
                       labels);
      CheckFinite(ce.item(), "reference l_ce", batch, train);
      ce.Backward();
      const double ref_norm = ref_adam.GradNorm();
      ref_adam.Step();
      ref_adam.ZeroGrad();
      notify(StepPhase::kAfterReferenceUpdate);

      // (b) inference network follows the detached reference outputs.
      const auto [v_c, p_c] = s2.simultaneous_update ? early_targets : targets();
      Rng inf_rng(MixSeeds(config_.seed, step_, kStage2Inference));
      ForwardOptions inf_opts;
      inf_opts.train = true;
      inf_opts.dropout_rng = &inf_rng;
      const BatchEncoding enc_n = pair.inference.Encode(noisy, inf_opts);
      ad::Tensor con = ConsistencyLoss(v_c, pair.inference.Project(enc_n), p_c,
                                       pair.inference.Classify(enc_n).probs, s2.lambda_con);
      CheckFinite(con.item(), "l_con", batch, train);
      if (con.requires_grad()) con.Backward();
      const double inf_norm = inf_adam.GradNorm();
      inf_adam.Step();
      inf_adam.ZeroGrad();
      notify(StepPhase::kAfterInferenceUpdate);

      log_.Add({{"type", "step"}, {"stage", "stage2"}, {"step", step_}, {"epoch", epoch},
                {"l_ce", ce.item()}, {"l_con", con.item()}, {"grad_norm_reference", ref_norm},
                {"grad_norm_inference", inf_norm}});
      ce_sum += ce.item();
      con_sum += con.item();
      ++n_batches;
      ++step_;
    }
    nlohmann::json record = {{"type", "epoch"}, {"stage", "stage2"}, {"epoch", epoch},
                             {"mean_l_ce", ce_sum / n_batches},
                             {"mean_l_con", con_sum / n_batches}};
    bool stop = false;
    if (valid.size() > 0) {
      const double acc = Accuracy(pair.inference, valid, InputSide::kNoisy);
      record["valid_accuracy"] = acc;
      stop = stopper.Update(acc, epoch);
    }
    record["wall_s"] = Seconds(start);
    log_.Add(record);
    if (stop) break;
  }
  if (stopper.best_epoch() >= 0) {
    stopper.RestoreBest();
    best_valid_accuracy_ = stopper.best();
    best_epoch_ = stopper.best_epoch();
  }
}

void Trainer::RunSupervised(Network& network, const EncodedDataset& train,
                            const std::vector<InputSide>& sides, const EncodedDataset& valid,
                            InputSide valid_side) {
  const Stage2Config& s2 = config_.stage2;
  if (sides.empty()) throw ContractError("supervised training needs at least one input side");
  Adam adam(network.ParameterTensors(), WithLr(s2.lr));
  EarlyStopper stopper(s2.patience, {&network});
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = train.size();
  const std::size_t n_records = n * sides.size();
  for (int epoch = 0; epoch < s2.epochs && n_records > 0; ++epoch) {
    double ce_sum = 0.0;
    int n_batches = 0;
    last_epoch_records_ = 0;
    for (const std::vector<std::size_t>& batch : Batches(n_records, "supervised", epoch)) {
      std::vector<const TokenSequence*> inputs;
      std::vector<std::int64_t> labels;
      for (std::size_t r : batch) {
        inputs.push_back(&train.Input(r % n, sides[r / n]));
        labels.push_back(train.label(r % n));
      }
      last_epoch_records_ += static_cast<std::int64_t>(batch.size());
      Rng rng(MixSeeds(config_.seed, step_, kSupervised));
      ForwardOptions opts;
      opts.train = true;
      opts.dropout_rng = &rng;
      ad::Tensor ce = CrossEntropy(network.Classify(network.Encode(inputs, opts)).logits, labels);
      if (!std::isfinite(ce.item())) {
        std::vector<std::size_t> examples;
        for (std::size_t r : batch) examples.push_back(r % n);
        CheckFinite(ce.item(), "l_ce", examples, train);
      }
      ce.Backward();
      const double norm = adam.GradNorm();
      adam.Step();
      adam.ZeroGrad();
      log_.Add({{"type", "step"}, {"stage", "supervised"}, {"step", step_}, {"epoch", epoch},
                {"l_ce", ce.item()}, {"grad_norm", norm}});
      ce_sum += ce.item();
      ++n_batches;
      ++step_;
    }
    nlohmann::json record = {{"type", "epoch"}, {"stage", "supervised"}, {"epoch", epoch},
                             {"records", last_epoch_records_}, {"mean_l_ce", ce_sum / n_batches}};
    bool stop = false;
    if (valid.size() > 0) {
      const double acc = Accuracy(network, valid, valid_side);
      record["valid_accuracy"] = acc;
      stop = stopper.Update(acc, epoch);
    }
    record["wall_s"] = Seconds(start);
    log_.Add(record);
    if (stop) break;
  }
  if (stopper.best_epoch() >= 0) {
    stopper.RestoreBest();
    best_valid_accuracy_ = stopper.best();
    best_epoch_ = stopper.best_epoch();
  }
}

EncoderConfig ResolveEncoderConfig(const TrainConfig& config, std::int64_t vocab_size,
                                   std::int64_t n_intents) {
  EncoderConfig enc = config.encoder;
  enc.vocab_size = vocab_size;
  enc.n_intents = n_intents;
  enc.init_seed = config.seed;
  enc.Validate();
  return enc;
}

TrainOutcome TrainMethod(const TrainConfig& config, const EncodedDataset& train,
                         const EncodedDataset& valid, StepObserver observer) {
  Trainer trainer(config);
  trainer.set_observer(std::move(observer));
  NetworkPair pair = InitNetworks(config.encoder);
  TrainOutcome out;
  out.method = config.method;
  switch (config.method) {
    case Method::kCleanCe:
      trainer.RunSupervised(pair.inference, train, {InputSide::kClean}, valid, InputSide::kClean);
      break;
    case Method::kNoisyCe:
      trainer.RunSupervised(pair.inference, train, {InputSide::kNoisy}, valid, InputSide::kNoisy);
      break;
    case Method::kCnCe:
      trainer.RunSupervised(pair.inference, train, {InputSide::kClean, InputSide::kNoisy}, valid,
                            InputSide::kNoisy);
      break;
    case Method::kCcl:
      trainer.RunStage1(pair, train);
      if (config.stage2.use_ce_instead_of_con) {
        trainer.RunSupervised(pair.inference, train, {InputSide::kNoisy}, valid,
                              InputSide::kNoisy);
      } else {
        trainer.RunStage2(pair, train, valid);
      }
      break;
  }
  if (config.method == Method::kCcl) out.networks.emplace_back("reference", std::move(pair.reference));
  out.networks.emplace_back("inference", std::move(pair.inference));
  out.log = trainer.log();
  out.best_valid_accuracy = trainer.best_valid_accuracy();
  out.best_epoch = trainer.best_epoch();
  out.steps = trainer.steps();
  return out;
}

}  // namespace rslu
