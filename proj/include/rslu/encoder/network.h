// include/rslu/encoder/network.h
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

#ifndef RSLU_ENCODER_NETWORK_H_
#define RSLU_ENCODER_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rslu/autodiff/attention.h"
#include "rslu/autodiff/tensor.h"
#include "rslu/common/random.h"
#include "rslu/corpus/vocabulary.h"
#include "rslu/encoder/config.h"

namespace rslu {

struct NamedParameter {
  std::string name;
  ad::Tensor value;
};

struct ForwardOptions {
  // Enables dropout; requires dropout_rng when the rate is non-zero.
  bool train = false;
  Rng* dropout_rng = nullptr;
  // Run PAD positions through the layers too (masked as keys). Outputs at
  // non-PAD positions are identical either way; the default skips the work.
  bool compute_pad_rows = false;
  // Receives attention matrices (see SegmentSelfAttention) for every layer.
  std::vector<double>* attention_weights = nullptr;
};

// Per-sequence view of an encoded batch.
struct EncoderOutput {
  ad::Tensor token_reps;  // [max_len x d_model]; row 0 is CLS
  ad::Tensor cls_rep;     // [1 x d_model]
  std::int64_t true_length = 0;
};

struct IntentDistribution {
  ad::Tensor logits;  // [B x n_intents]
  ad::Tensor probs;   // softmax(logits)
};

// Encoder activations for a batch, packed row-wise: sequence b occupies rows
// [segments[b].offset, +segments[b].length), CLS first.
class BatchEncoding {
 public:
  BatchEncoding(ad::Tensor hidden, std::vector<ad::AttentionSegment> segments,
                std::vector<std::int64_t> true_lengths, std::int64_t max_len);

  const ad::Tensor& hidden() const { return hidden_; }
  std::size_t batch_size() const { return segments_.size(); }
  std::int64_t true_length(std::size_t b) const { return true_lengths_[b]; }
  std::int64_t max_len() const { return max_len_; }

  // Non-CLS, non-PAD rows of all sequences, in batch order: [sum(len) x d].
  ad::Tensor TokenRows() const;
  // Offset of sequence b's first token inside TokenRows().
  std::int64_t TokenOffset(std::size_t b) const;
  std::int64_t total_tokens() const;
  ad::Tensor ClsRows() const;  // [B x d]
  // PAD rows zeroed, each sequence flattened row-major: [B x max_len*d].
  ad::Tensor PaddedFlat() const;
  EncoderOutput Output(std::size_t b) const;

 private:
  ad::Tensor hidden_;
  std::vector<ad::AttentionSegment> segments_;
  std::vector<std::int64_t> true_lengths_;
  std::vector<std::int64_t> token_offsets_;
  std::int64_t max_len_;
};

// Transformer encoder with its projection head (f / f') and intent
// classifier. Post-norm layers: self-attention, residual, layer norm,
// GELU feed-forward, residual, layer norm.
class Network {
 public:
  // Scaled-uniform init (bound sqrt(6 / (fan_in + fan_out))) for every weight
  // matrix, zero biases, unit layer-norm gains. Deterministic in init_seed.
  explicit Network(const EncoderConfig& config);

  Network(Network&&) = default;
  Network& operator=(Network&&) = default;
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  // Deep copy with independent parameter storage.
  Network Clone() const;

  const EncoderConfig& config() const { return config_; }
  const std::vector<NamedParameter>& parameters() const { return params_; }
  std::vector<ad::Tensor> ParameterTensors() const;
  std::vector<ad::Tensor> EncoderParameters() const;
  const ad::Tensor& Parameter(const std::string& name) const;
  std::int64_t ParameterCount() const;
  void ZeroGrad();

  // Throws ContractError for ids outside the vocabulary or sequences not
  // padded to max_len.
  BatchEncoding Encode(const std::vector<const TokenSequence*>& batch,
                       const ForwardOptions& options = {}) const;

  // v = f(E(x)): [B x d_proj].
  ad::Tensor Project(const BatchEncoding& encoding) const;
  IntentDistribution Classify(const BatchEncoding& encoding) const;

 private:
  struct Layer {
    ad::Tensor wq, bq, wk, bk, wv, bv, wo, bo;
    ad::Tensor ln1_gain, ln1_bias;
    ad::Tensor w1, b1, w2, b2;
    ad::Tensor ln2_gain, ln2_bias;
  };

  Network() = default;
  void Bind();

  EncoderConfig config_;
  std::vector<NamedParameter> params_;
  // Handles into params_, filled by Bind().
  ad::Tensor token_embedding_, position_embedding_;
  std::vector<Layer> layers_;
  ad::Tensor proj_weight_, proj_bias_, cls_weight_, cls_bias_;
  std::size_t n_encoder_params_ = 0;
};

// Reference network (clean input, trained with CE) and inference network
// (noisy input, deployed alone). Same shapes, independent storage, equal
// values at initialization.
struct NetworkPair {
  Network reference;
  Network inference;
};

NetworkPair InitNetworks(const EncoderConfig& config);

// Digest of all parameter values; equal digests mean bit-identical params.
std::string ParameterDigest(const Network& network);

}  // namespace rslu

#endif  // RSLU_ENCODER_NETWORK_H_
