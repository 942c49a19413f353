// src/cli/commands.cc
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

#include "rslu/cli/commands.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "rslu/cli/manifest.h"
#include "rslu/common/errors.h"
#include "rslu/common/io.h"
#include "rslu/corpus/dataset_io.h"
#include "rslu/corpus/synthetic.h"
#include "rslu/encoder/checkpoint.h"
#include "rslu/eval/analysis.h"
#include "rslu/noise/channel.h"
#include "rslu/noise/wer.h"
#include "rslu/train/ablation.h"
#include "rslu/train/pipeline.h"

namespace rslu {

namespace fs = std::filesystem;

namespace {

// Bad invocation: maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

void RequireFile(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

std::vector<double> ParseDoubles(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

std::vector<std::string> ParseList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string AbsolutePath(const std::string& path) {
  return fs::absolute(path).lexically_normal().string();
}

// -------------------------------------------------------------------- synth

struct SynthOptions {
  std::string spec, out;
};

int Synth(const SynthOptions& o, std::ostream& out) {
  SyntheticSpec spec;
  if (!o.spec.empty()) {
    RequireFile(o.spec, "spec file");
    spec = SyntheticSpec::FromJson(ReadFile(o.spec));
  }
  const std::vector<TranscriptPair> pairs = GenerateSyntheticCorpus(spec);
  SaveJsonl(o.out, pairs);
  out << "wrote " << pairs.size() << " pairs (" << spec.n_train << " train, " << spec.n_valid
      << " valid, " << spec.n_test << " test) to " << o.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ corrupt

struct CorruptOptions {
  std::string in, out, mix = "0.6,0.2,0.2", mode = "nearest", report;
  double wer = 0.0;
  std::uint64_t seed = 0;
  std::size_t calibration_size = 2000;
};

int Corrupt(const CorruptOptions& o, std::ostream& out) {
  RequireFile(o.in, "input corpus");
  const std::vector<TranscriptPair> pairs = LoadJsonl(o.in);
  if (pairs.empty()) throw UsageError("input corpus is empty");
  NoiseConfig config;
  config.target_wer = o.wer;
  const std::vector<double> mix = ParseDoubles(o.mix, "--mix");
  if (mix.size() != 3) throw UsageError("--mix needs three comma-separated weights");
  config.w_sub = mix[0];
  config.w_ins = mix[1];
  config.w_del = mix[2];
  config.seed = o.seed;
  if (o.mode == "nearest") {
    config.confusion_mode = ConfusionMode::kCharEditNearest;
  } else if (o.mode == "uniform") {
    config.confusion_mode = ConfusionMode::kUniformRandom;
  } else {
    throw UsageError("--mode must be nearest or uniform");
  }
  config.Validate();

  const Vocabulary vocab = Vocabulary::Build(pairs, 1);
  const NoiseChannel channel(config, vocab);
  std::vector<TranscriptPair> sample = FilterSplit(pairs, Split::kTrain);
  if (sample.size() > o.calibration_size) sample.resize(o.calibration_size);
  const CalibrationResult cal = Calibrate(channel, sample);
  const std::vector<TranscriptPair> noisy = CorruptCorpus(pairs, channel, cal.p_err);
  SaveJsonl(o.out, noisy);
  const WerReport report = CorpusWerReport(noisy);
  if (!o.report.empty()) WriteFileAtomic(o.report, report.ToJson());
  out << "p_err " << FormatFixed(cal.p_err, 6) << " (calibration WER "
      << FormatFixed(cal.achieved_wer, 4) << " after " << cal.iterations << " iterations)\n"
      << "corpus WER " << FormatFixed(report.corpus_wer, 4) << " over " << noisy.size()
      << " pairs, written to " << o.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeOptions {
  std::string in, json, worst;
  std::size_t worst_k = 10;
};

int Analyze(const AnalyzeOptions& o, std::ostream& out) {
  RequireFile(o.in, "input corpus");
  const std::vector<TranscriptPair> pairs = LoadJsonl(o.in);
  if (pairs.empty()) throw UsageError("input corpus is empty");
  const WerReport report = CorpusWerReport(pairs);
  out << report.ToTable(o.worst_k);
  if (!o.json.empty()) WriteFileAtomic(o.json, report.ToJson(o.worst_k));
  if (!o.worst.empty()) WriteFileAtomic(o.worst, report.WorstKJsonl(o.worst_k));
  return kExitOk;
}

// -------------------------------------------------------------------- train

struct TrainOptions {
  std::string method, config, data, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> batch_size;
  std::optional<double> stage1_lr, stage2_lr, lambda_ctr, lambda_con, tau;
  std::optional<int> stage1_epochs, stage2_epochs;
};

TrainConfig BuildConfig(const TrainOptions& o) {
  TrainConfig c;
  if (!o.config.empty()) {
    RequireFile(o.config, "config file");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ReadFile(o.config));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    c = TrainConfig::FromJson(j);
  }
  // Flags win over file values.
  if (!o.method.empty()) c.method = ParseMethod(o.method);
  if (o.seed) c.seed = *o.seed;
  if (o.batch_size) c.batch_size = *o.batch_size;
  if (o.stage1_lr) c.stage1.lr = *o.stage1_lr;
  if (o.stage2_lr) c.stage2.lr = *o.stage2_lr;
  if (o.stage1_epochs) c.stage1.epochs = *o.stage1_epochs;
  if (o.stage2_epochs) c.stage2.epochs = *o.stage2_epochs;
  if (o.lambda_ctr) c.stage1.contrastive.lambda_ctr = *o.lambda_ctr;
  if (o.lambda_con) c.stage2.lambda_con = *o.lambda_con;
  if (o.tau) c.stage1.contrastive.tau = *o.tau;
  c.Validate();
  return c;
}

RunManifest StartRun(const std::string& command, const nlohmann::json& config,
                     std::uint64_t seed, const std::string& data, const fs::path& dir,
                     std::map<std::string, std::string> artifacts) {
  RequireFile(data, "data file");
  fs::create_directories(dir);
  RunManifest m;
  m.command = command;
  m.config = config;
  m.seed = seed;
  m.inputs["data"] = {AbsolutePath(data), Sha256File(data)};
  m.artifacts = std::move(artifacts);
  m.Save(dir / "manifest.json");
  return m;
}

int TrainRun(const TrainConfig& config, const std::string& data, const fs::path& dir,
             std::ostream& out) {
  StartRun("train", config.ToJson(), config.seed, data, dir,
           {{"manifest", "manifest.json"},
            {"log", "log.jsonl"},
            {"model", "model.cclckpt"},
            {"metrics", "metrics.json"}});
  const std::vector<TranscriptPair> pairs = LoadJsonl(data);
  const PreparedData prepared = PrepareData(pairs, config.min_freq, config.encoder.max_len);
  const ExperimentResult result = RunExperiment(config, prepared);

  CheckpointMeta meta;
  meta.config = result.config.encoder;
  meta.method = std::string(MethodName(config.method));
  meta.vocab_words = prepared.vocab.Words();
  meta.labels = prepared.labels.names();
  meta.extra = {{"train_config", config.ToJson()}, {"min_freq", config.min_freq}};
  std::vector<std::pair<std::string, const Network*>> nets;
  for (const auto& [role, net] : result.outcome.networks) nets.emplace_back(role, &net);
  SaveCheckpoint(dir / "model.cclckpt", meta, nets);
  WriteFileAtomic(dir / "log.jsonl", result.outcome.log.ToJsonl());
  WriteFileAtomic(dir / "metrics.json", result.MetricsJson().dump(2) + "\n");
  out << MethodName(config.method) << ": test accuracy clean "
      << FormatFixed(result.test_clean.accuracy, 4) << ", noisy "
      << FormatFixed(result.test_noisy.accuracy, 4) << " (run dir " << dir.string() << ")\n";
  return kExitOk;
}

int Train(const TrainOptions& o, std::ostream& out) {
  return TrainRun(BuildConfig(o), o.data, o.out, out);
}

// --------------------------------------------------------------- checkpoint

struct Loaded {
  Checkpoint checkpoint;
  Vocabulary vocab;
  IntentLabelSet labels;
};

Loaded LoadModel(const std::string& path) {
  RequireFile(path, "checkpoint");
  Loaded l{LoadCheckpoint(path), Vocabulary(), IntentLabelSet()};
  const int min_freq = l.checkpoint.meta.extra.value("min_freq", 1);
  l.vocab = Vocabulary::FromWords(l.checkpoint.meta.vocab_words, min_freq);
  l.labels = IntentLabelSet(l.checkpoint.meta.labels);
  return l;
}

EncodedDataset LoadSplit(const Loaded& model, const std::string& data, const std::string& split) {
  RequireFile(data, "data file");
  std::vector<TranscriptPair> pairs = LoadJsonl(data);
  if (split != "all") pairs = FilterSplit(pairs, ParseSplit(split));
  return EncodedDataset::Build(pairs, model.vocab, model.labels,
                               model.checkpoint.meta.config.max_len);
}

std::size_t FindId(const EncodedDataset& data, const std::string& id) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.id(i) == id) return i;
  }
  throw UsageError("no pair with id '" + id + "' in the selected split");
}

// --------------------------------------------------------------------- eval

struct EvalOptions {
  std::string checkpoint, data, side = "noisy", split = "test", buckets, out,
      role = "inference";
};

int Eval(const EvalOptions& o, std::ostream& out) {
  const Loaded model = LoadModel(o.checkpoint);
  const EncodedDataset data = LoadSplit(model, o.data, o.split);
  const InputSide side = ParseInputSide(o.side);
  std::optional<std::vector<double>> edges;
  if (!o.buckets.empty()) {
    edges = o.buckets == "default" ? DefaultWerEdges() : ParseDoubles(o.buckets, "--buckets");
  }
  const MetricsReport report = Evaluate(model.checkpoint.Get(o.role), data, side, model.labels,
                                        edges ? &*edges : nullptr);
  for (const std::string& w : report.warnings) Warn(w);
  const std::string text = report.ToJson().dump(2) + "\n";
  if (!o.out.empty()) WriteFileAtomic(o.out, text);
  out << text;
  return kExitOk;
}

// ------------------------------------------------------------------- simmap

struct SimmapOptions {
  std::string checkpoint, data, ids, level = "token", out, split = "test";
  bool text = false;
};

int Simmap(const SimmapOptions& o, std::ostream& out) {
  const Loaded model = LoadModel(o.checkpoint);
  const EncodedDataset data = LoadSplit(model, o.data, o.split);
  const std::vector<std::string> ids = ParseList(o.ids);
  if (ids.empty()) throw UsageError("--ids needs at least one pair id");
  const Network& inference = model.checkpoint.Get("inference");
  const Network* reference = &inference;
  if (model.checkpoint.Has("reference")) {
    reference = &model.checkpoint.Get("reference");
  } else {
    Warn("checkpoint has no reference network; using the inference network for both sides");
  }
  fs::create_directories(o.out);
  std::vector<SimilarityMap> maps;
  if (o.level == "token") {
    for (const std::string& id : ids) {
      maps.push_back(TokenSimilarityMap(*reference, inference, data, FindId(data, id)));
    }
  } else if (o.level == "utterance") {
    std::vector<std::size_t> indices;
    for (const std::string& id : ids) indices.push_back(FindId(data, id));
    maps.push_back(UtteranceSimilarityMap(*reference, inference, data, indices));
  } else {
    throw UsageError("--level must be token or utterance");
  }
  for (const SimilarityMap& m : maps) {
    const fs::path base = fs::path(o.out) / ("simmap_" + m.id);
    WriteFileAtomic(base.string() + ".json", m.ToJson().dump(2) + "\n");
    if (o.text) WriteFileAtomic(base.string() + ".txt", m.RenderText());
    out << "wrote " << base.string() << ".json (" << m.rows() << " x " << m.cols() << ")\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- export

struct ExportOptions {
  std::string checkpoint, data, level = "token", side = "noisy", split = "test", out,
      role = "inference";
};

int Export(const ExportOptions& o, std::ostream& out) {
  const Loaded model = LoadModel(o.checkpoint);
  const EncodedDataset data = LoadSplit(model, o.data, o.split);
  ExportEmbeddings(model.checkpoint.Get(o.role), data, ParseInputSide(o.side),
                   ParseEmbeddingLevel(o.level), o.out);
  out << "wrote embeddings to " << o.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------- topk

struct TopkOptions {
  std::string checkpoint, data, id, side = "noisy", split = "test", role = "inference";
  std::size_t k = 5;
};

int Topk(const TopkOptions& o, std::ostream& out) {
  const Loaded model = LoadModel(o.checkpoint);
  const EncodedDataset data = LoadSplit(model, o.data, o.split);
  const auto ranked = TopKDistribution(model.checkpoint.Get(o.role), data, FindId(data, o.id),
                                       ParseInputSide(o.side), model.labels, o.k);
  nlohmann::json j = nlohmann::json::array();
  for (const RankedIntent& r : ranked) {
    j.push_back({{"intent", r.intent}, {"index", r.index}, {"prob", r.prob}});
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- ablation

int AblationRun(const TrainConfig& config, const std::string& data, const fs::path& dir,
                std::ostream& out) {
  StartRun("ablation", config.ToJson(), config.seed, data, dir,
           {{"manifest", "manifest.json"}, {"metrics", "metrics.json"}});
  const std::vector<TranscriptPair> pairs = LoadJsonl(data);
  const PreparedData prepared = PrepareData(pairs, config.min_freq, config.encoder.max_len);
  TrainConfig resolved = config;
  resolved.encoder = ResolveEncoderConfig(config, prepared.vocab.size(),
                                          static_cast<std::int64_t>(prepared.labels.size()));
  const std::vector<AblationRow> rows = RunAblationGrid(resolved, prepared.train, prepared.valid,
                                                        prepared.test, prepared.labels);
  WriteFileAtomic(dir / "metrics.json", AblationToJson(rows).dump(2) + "\n");
  out << AblationToTable(rows);
  return kExitOk;
}

int Ablation(const TrainOptions& o, std::ostream& out) {
  return AblationRun(BuildConfig(o), o.data, o.out, out);
}

// ------------------------------------------------------------------- replay

struct ReplayOptions {
  std::string manifest, out;
};

int Replay(const ReplayOptions& o, std::ostream& out) {
  RequireFile(o.manifest, "manifest");
  const RunManifest m = RunManifest::Load(o.manifest);
  m.VerifyInputs();
  const TrainConfig config = TrainConfig::FromJson(m.config);
  const std::string& data = m.inputs.at("data").path;
  if (m.command == "train") return TrainRun(config, data, o.out, out);
  if (m.command == "ablation") return AblationRun(config, data, o.out, out);
  throw UsageError("cannot replay command '" + m.command + "'");
}

void AddTrainFlags(CLI::App* cmd, TrainOptions& o, bool method_flag) {
  if (method_flag) {
    cmd->add_option("--method", o.method, "clean_ce, noisy_ce, cn_ce or ccl (overrides config)");
  }
  cmd->add_option("--config", o.config, "JSON training config");
  cmd->add_option("--data", o.data, "JSONL corpus with train/valid/test splits")->required();
  cmd->add_option("--out", o.out, "run directory")->required();
  cmd->add_option("--seed", o.seed, "override seed");
  cmd->add_option("--batch-size", o.batch_size, "override batch size");
  cmd->add_option("--stage1-lr", o.stage1_lr, "override stage-1 learning rate");
  cmd->add_option("--stage1-epochs", o.stage1_epochs, "override stage-1 epochs");
  cmd->add_option("--stage2-lr", o.stage2_lr, "override stage-2 / baseline learning rate");
  cmd->add_option("--stage2-epochs", o.stage2_epochs, "override stage-2 / baseline epochs");
  cmd->add_option("--lambda-ctr", o.lambda_ctr, "override lambda_ctr");
  cmd->add_option("--lambda-con", o.lambda_con, "override lambda_con");
  cmd->add_option("--tau", o.tau, "override contrastive temperature");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contrastive and consistency learning for noisy-transcript intent classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SynthOptions synth;
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic intent corpus");
  c_synth->add_option("--spec", synth.spec, "JSON corpus spec (defaults if omitted)");
  c_synth->add_option("--out", synth.out, "output JSONL")->required();

  CorruptOptions corrupt;
  auto* c_corrupt = app.add_subcommand("corrupt", "fill the noisy field at a target WER");
  c_corrupt->add_option("--in", corrupt.in, "input JSONL")->required();
  c_corrupt->add_option("--out", corrupt.out, "output JSONL")->required();
  c_corrupt->add_option("--wer", corrupt.wer, "target corpus WER in [0, 1)")->required();
  c_corrupt->add_option("--mix", corrupt.mix, "substitution,insertion,deletion weights");
  c_corrupt->add_option("--seed", corrupt.seed, "channel seed");
  c_corrupt->add_option("--mode", corrupt.mode, "substitution mode: nearest or uniform");
  c_corrupt->add_option("--calibration-size", corrupt.calibration_size,
                        "train pairs used for calibration");
  c_corrupt->add_option("--report", corrupt.report, "write the WER report JSON here");

  AnalyzeOptions analyze;
  auto* c_analyze = app.add_subcommand("analyze", "word error rate report");
  c_analyze->add_option("--in", analyze.in, "input JSONL")->required();
  c_analyze->add_option("--json", analyze.json, "write the report JSON here");
  c_analyze->add_option("--worst", analyze.worst, "write the worst-k pairs as JSONL here");
  c_analyze->add_option("--worst-k", analyze.worst_k, "number of worst pairs to list");

  TrainOptions train;
  auto* c_train = app.add_subcommand("train", "train a method into a run directory");
  AddTrainFlags(c_train, train, true);

  TrainOptions ablation;
  auto* c_ablation = app.add_subcommand("ablation", "run the eight-cell loss ablation grid");
  AddTrainFlags(c_ablation, ablation, false);

  EvalOptions eval;
  auto* c_eval = app.add_subcommand("eval", "evaluate a checkpoint");
  c_eval->add_option("--checkpoint", eval.checkpoint, "model.cclckpt")->required();
  c_eval->add_option("--data", eval.data, "JSONL corpus")->required();
  c_eval->add_option("--side", eval.side, "clean or noisy");
  c_eval->add_option("--split", eval.split, "train, valid, test or all");
  c_eval->add_option("--buckets", eval.buckets, "WER bucket edges, e.g. 0,0.1,0.3,0.5,1 or default");
  c_eval->add_option("--role", eval.role, "network role in the checkpoint");
  c_eval->add_option("--out", eval.out, "also write the report here");

  SimmapOptions simmap;
  auto* c_simmap = app.add_subcommand("simmap", "cosine similarity maps");
  c_simmap->add_option("--checkpoint", simmap.checkpoint, "model.cclckpt")->required();
  c_simmap->add_option("--data", simmap.data, "JSONL corpus")->required();
  c_simmap->add_option("--ids", simmap.ids, "comma-separated pair ids")->required();
  c_simmap->add_option("--level", simmap.level, "token or utterance");
  c_simmap->add_option("--split", simmap.split, "train, valid, test or all");
  c_simmap->add_option("--out", simmap.out, "output directory")->required();
  c_simmap->add_flag("--text", simmap.text, "also write a text heat rendering");

  ExportOptions exp;
  auto* c_export = app.add_subcommand("export", "export raw embeddings as JSONL");
  c_export->add_option("--checkpoint", exp.checkpoint, "model.cclckpt")->required();
  c_export->add_option("--data", exp.data, "JSONL corpus")->required();
  c_export->add_option("--level", exp.level, "token or utterance");
  c_export->add_option("--side", exp.side, "clean or noisy");
  c_export->add_option("--split", exp.split, "train, valid, test or all");
  c_export->add_option("--role", exp.role, "network role in the checkpoint");
  c_export->add_option("--out", exp.out, "output JSONL")->required();

  TopkOptions topk;
  auto* c_topk = app.add_subcommand("topk", "top-k intent distribution for one pair");
  c_topk->add_option("--checkpoint", topk.checkpoint, "model.cclckpt")->required();
  c_topk->add_option("--data", topk.data, "JSONL corpus")->required();
  c_topk->add_option("--id", topk.id, "pair id")->required();
  c_topk->add_option("--k", topk.k, "number of intents");
  c_topk->add_option("--side", topk.side, "clean or noisy");
  c_topk->add_option("--split", topk.split, "train, valid, test or all");
  c_topk->add_option("--role", topk.role, "network role in the checkpoint");

  ReplayOptions replay;
  auto* c_replay = app.add_subcommand("replay", "re-run a train or ablation run from its manifest");
  c_replay->add_option("--manifest", replay.manifest, "manifest.json of the original run")
      ->required();
  c_replay->add_option("--out", replay.out, "new run directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kToolVersion) + "\n"
                                                           : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c_synth) return Synth(synth, out);
    if (*c_corrupt) return Corrupt(corrupt, out);
    if (*c_analyze) return Analyze(analyze, out);
    if (*c_train) return Train(train, out);
    if (*c_ablation) return Ablation(ablation, out);
    if (*c_eval) return Eval(eval, out);
    if (*c_simmap) return Simmap(simmap, out);
    if (*c_export) return Export(exp, out);
    if (*c_topk) return Topk(topk, out);
    if (*c_replay) return Replay(replay, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace rslu
