// src/encoder/network.cc
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

#include "rslu/encoder/network.h"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "rslu/autodiff/ops.h"
#include "rslu/common/errors.h"
#include "rslu/common/io.h"

namespace rslu {

using ad::Tensor;

namespace {

Tensor Linear(const Tensor& x, const Tensor& w, const Tensor& b) {
  return ad::MatMul(x, w) + ad::TileRows(b, x.dim(0));
}

Tensor Affine(const Tensor& x, const Tensor& gain, const Tensor& bias) {
  const std::int64_t n = x.dim(0);
  return ad::LayerNorm(x) * ad::TileRows(gain, n) + ad::TileRows(bias, n);
}

Tensor MaybeDropout(const Tensor& x, double rate, const ForwardOptions& options) {
  if (!options.train || rate <= 0.0) return x;
  if (options.dropout_rng == nullptr) {
    throw ContractError("training-mode forward needs a dropout generator");
  }
  return ad::Dropout(x, rate, *options.dropout_rng);
}

}  // namespace

BatchEncoding::BatchEncoding(Tensor hidden, std::vector<ad::AttentionSegment> segments,
                             std::vector<std::int64_t> true_lengths, std::int64_t max_len)
    : hidden_(std::move(hidden)),
      segments_(std::move(segments)),
      true_lengths_(std::move(true_lengths)),
      max_len_(max_len) {
  std::int64_t offset = 0;
  for (std::int64_t len : true_lengths_) {
    token_offsets_.push_back(offset);
    offset += len;
  }
  token_offsets_.push_back(offset);
}

std::int64_t BatchEncoding::TokenOffset(std::size_t b) const { return token_offsets_.at(b); }

std::int64_t BatchEncoding::total_tokens() const { return token_offsets_.back(); }

Tensor BatchEncoding::TokenRows() const {
  std::vector<std::int64_t> rows;
  rows.reserve(static_cast<std::size_t>(total_tokens()));
  for (std::size_t b = 0; b < segments_.size(); ++b) {
    for (std::int64_t p = 1; p <= true_lengths_[b]; ++p) rows.push_back(segments_[b].offset + p);
  }
  return ad::GatherRows(hidden_, rows);
}

Tensor BatchEncoding::ClsRows() const {
  std::vector<std::int64_t> rows;
  for (const ad::AttentionSegment& s : segments_) rows.push_back(s.offset);
  return ad::GatherRows(hidden_, rows);
}

Tensor BatchEncoding::PaddedFlat() const {
  std::vector<std::int64_t> rows;
  rows.reserve(segments_.size() * static_cast<std::size_t>(max_len_));
  for (std::size_t b = 0; b < segments_.size(); ++b) {
    for (std::int64_t p = 0; p < max_len_; ++p) {
      rows.push_back(p <= true_lengths_[b] ? segments_[b].offset + p : -1);
    }
  }
  const std::int64_t d = hidden_.dim(1);
  return ad::Reshape(ad::GatherRows(hidden_, rows),
                     {static_cast<std::int64_t>(segments_.size()), max_len_ * d});
}

EncoderOutput BatchEncoding::Output(std::size_t b) const {
  const ad::AttentionSegment& s = segments_.at(b);
  std::vector<std::int64_t> rows;
  for (std::int64_t p = 0; p < max_len_; ++p) rows.push_back(p < s.length ? s.offset + p : -1);
  EncoderOutput out;
  out.token_reps = ad::GatherRows(hidden_, rows);
  out.cls_rep = ad::GatherRows(hidden_, {s.offset});
  out.true_length = true_lengths_[b];
  return out;
}

Network::Network(const EncoderConfig& config) : config_(config) {
  config_.Validate();
  const std::int64_t d = config_.d_model, ff = config_.d_ff;
  Rng rng(config_.init_seed);
  auto weight = [&](const std::string& name, std::int64_t rows, std::int64_t cols) {
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::vector<double> v(static_cast<std::size_t>(rows * cols));
    for (double& x : v) x = UniformRange(rng, -bound, bound);
    params_.push_back({name, Tensor::FromVector({rows, cols}, std::move(v), true)});
  };
  auto constant = [&](const std::string& name, std::int64_t n, double fill) {
    params_.push_back({name, Tensor::Full({n}, fill, true)});
  };

  weight("embed.token", config_.vocab_size, d);
  weight("embed.position", config_.max_len, d);
  for (std::int64_t l = 0; l < config_.n_layers; ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    for (const char* m : {"q", "k", "v", "o"}) {
      weight(p + "attn.w" + m, d, d);
      constant(p + "attn.b" + m, d, 0.0);
    }
    constant(p + "ln1.gain", d, 1.0);
    constant(p + "ln1.bias", d, 0.0);
    weight(p + "ffn.w1", d, ff);
    constant(p + "ffn.b1", ff, 0.0);
    weight(p + "ffn.w2", ff, d);
    constant(p + "ffn.b2", d, 0.0);
    constant(p + "ln2.gain", d, 1.0);
    constant(p + "ln2.bias", d, 0.0);
  }
  n_encoder_params_ = params_.size();
  weight("proj.weight", config_.max_len * d, config_.d_proj);
  constant("proj.bias", config_.d_proj, 0.0);
  weight("cls.weight", d, config_.n_intents);
  constant("cls.bias", config_.n_intents, 0.0);
  Bind();
}

void Network::Bind() {
  std::size_t i = 0;
  auto next = [&]() -> Tensor { return params_.at(i++).value; };
  token_embedding_ = next();
  position_embedding_ = next();
  layers_.assign(static_cast<std::size_t>(config_.n_layers), Layer{});
  for (Layer& layer : layers_) {
    layer.wq = next(); layer.bq = next();
    layer.wk = next(); layer.bk = next();
    layer.wv = next(); layer.bv = next();
    layer.wo = next(); layer.bo = next();
    layer.ln1_gain = next(); layer.ln1_bias = next();
    layer.w1 = next(); layer.b1 = next();
    layer.w2 = next(); layer.b2 = next();
    layer.ln2_gain = next(); layer.ln2_bias = next();
  }
  n_encoder_params_ = i;
  proj_weight_ = next();
  proj_bias_ = next();
  cls_weight_ = next();
  cls_bias_ = next();
}

Network Network::Clone() const {
  Network copy;
  copy.config_ = config_;
  for (const NamedParameter& p : params_) {
    std::vector<double> v(p.value.values().begin(), p.value.values().end());
    copy.params_.push_back({p.name, Tensor::FromVector(p.value.shape(), std::move(v), true)});
  }
  copy.Bind();
  return copy;
}

std::vector<Tensor> Network::ParameterTensors() const {
  std::vector<Tensor> out;
  for (const NamedParameter& p : params_) out.push_back(p.value);
  return out;
}

std::vector<Tensor> Network::EncoderParameters() const {
  std::vector<Tensor> out;
  for (std::size_t i = 0; i < n_encoder_params_; ++i) out.push_back(params_[i].value);
  return out;
}

const Tensor& Network::Parameter(const std::string& name) const {
  for (const NamedParameter& p : params_) {
    if (p.name == name) return p.value;
  }
  throw ContractError("no parameter named " + name);
}

std::int64_t Network::ParameterCount() const {
  std::int64_t n = 0;
  for (const NamedParameter& p : params_) n += p.value.numel();
  return n;
}

void Network::ZeroGrad() {
  for (NamedParameter& p : params_) p.value.ZeroGrad();
}

BatchEncoding Network::Encode(const std::vector<const TokenSequence*>& batch,
                              const ForwardOptions& options) const {
  if (batch.empty()) throw ContractError("cannot encode an empty batch");
  const std::int64_t max_len = config_.max_len;
  std::vector<ad::AttentionSegment> segments;
  std::vector<std::int64_t> true_lengths, ids, positions;
  std::int64_t offset = 0;
  for (const TokenSequence* seq : batch) {
    if (static_cast<std::int64_t>(seq->ids.size()) != max_len) {
      throw ContractError("sequence has " + std::to_string(seq->ids.size()) +
                          " ids, expected max_len " + std::to_string(max_len));
    }
    if (seq->true_length < 0 || seq->true_length >= max_len) {
      throw ContractError("true length " + std::to_string(seq->true_length) +
                          " does not fit max_len " + std::to_string(max_len));
    }
    const std::int64_t valid = seq->true_length + 1;
    const std::int64_t rows = options.compute_pad_rows ? max_len : valid;
    for (std::int64_t p = 0; p < rows; ++p) {
      const std::int64_t id = seq->ids[p];
      if (id < 0 || id >= config_.vocab_size) {
        throw ContractError("token id " + std::to_string(id) + " outside vocabulary of size " +
                            std::to_string(config_.vocab_size));
      }
      ids.push_back(id);
      positions.push_back(p);
    }
    segments.push_back({offset, rows, valid});
    true_lengths.push_back(seq->true_length);
    offset += rows;
  }

  const double rate = config_.dropout_rate;
  Tensor h = ad::GatherRows(token_embedding_, ids) + ad::GatherRows(position_embedding_, positions);
  h = MaybeDropout(h, rate, options);
  for (const Layer& layer : layers_) {
    Tensor q = Linear(h, layer.wq, layer.bq);
    Tensor k = Linear(h, layer.wk, layer.bk);
    Tensor v = Linear(h, layer.wv, layer.bv);
    Tensor att = ad::SegmentSelfAttention(q, k, v, segments, static_cast<int>(config_.n_heads),
                                          options.attention_weights);
    Tensor o = MaybeDropout(Linear(att, layer.wo, layer.bo), rate, options);
    h = Affine(h + o, layer.ln1_gain, layer.ln1_bias);
    Tensor f = Linear(ad::Gelu(Linear(h, layer.w1, layer.b1)), layer.w2, layer.b2);
    f = MaybeDropout(f, rate, options);
    h = Affine(h + f, layer.ln2_gain, layer.ln2_bias);
  }
  return BatchEncoding(h, std::move(segments), std::move(true_lengths), max_len);
}

Tensor Network::Project(const BatchEncoding& encoding) const {
  return Linear(encoding.PaddedFlat(), proj_weight_, proj_bias_);
}

IntentDistribution Network::Classify(const BatchEncoding& encoding) const {
  IntentDistribution out;
  out.logits = Linear(encoding.ClsRows(), cls_weight_, cls_bias_);
  out.probs = ad::Softmax(out.logits, -1);
  return out;
}

NetworkPair InitNetworks(const EncoderConfig& config) {
  Network reference(config);
  Network inference = reference.Clone();
  return {std::move(reference), std::move(inference)};
}

std::string ParameterDigest(const Network& network) {
  std::string bytes;
  for (const NamedParameter& p : network.parameters()) {
    bytes += p.name;
    bytes.push_back('\0');
    const auto v = p.value.values();
    const std::size_t start = bytes.size();
    bytes.resize(start + v.size() * sizeof(double));
    std::memcpy(bytes.data() + start, v.data(), v.size() * sizeof(double));
  }
  return Sha256Hex(bytes);
}

}  // namespace rslu
