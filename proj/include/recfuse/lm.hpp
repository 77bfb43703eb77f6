// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recfuse/lora.hpp"
#include "recfuse/tensor.hpp"
#include "recfuse/tokenizer.hpp"

namespace recfuse {

// Which probability the relevance score reads off the Yes/No logits.
enum class ScoreRule { YesMinusNo, SigmoidYes };

struct LmConfig {
    int d2 = 128;
    int n_layers = 4;
    int n_heads = 4;
    int context_len = 512;
    int vocab_size = 0;  // set from the tokenizer
    uint64_t seed = 1;
    bool tie_embeddings = false;
    ScoreRule score_rule = ScoreRule::YesMinusNo;

    int d_ff() const { return 4 * d2; }
    int d_head() const { return d2 / n_heads; }
};

struct LmLayerParams {
    Matrix ln1_g, ln1_b;  // 1 x d2
    Matrix wq, wk, wv, wo;  // d2 x d2
    Matrix bq, bk, bv, bo;  // 1 x d2
    Matrix ln2_g, ln2_b;
    Matrix w1, b1;  // d_ff x d2, 1 x d_ff
    Matrix w2, b2;  // d2 x d_ff, 1 x d2
};

struct LmParams {
    LmConfig config;
    Matrix tok_emb;  // vocab x d2
    Matrix pos_emb;  // context x d2
    std::vector<LmLayerParams> layers;
    Matrix lnf_g, lnf_b;
    Matrix head;  // vocab x d2; empty when tied to tok_emb

    static LmParams init(const LmConfig& config);
    std::vector<NamedTensor> named_tensors();
    const Matrix& head_matrix() const { return config.tie_embeddings ? tok_emb : head; }
};

// Token ids plus the embedded input rows after placeholder substitution.
struct SplicedSequence {
    std::vector<int> ids;
    std::vector<std::string> slot_refs;
    Matrix emb;  // L x d2
    int answer_start = -1;  // index of first answer token; -1 = prompt only

    int length() const { return static_cast<int>(ids.size()); }
    std::vector<int> slot_positions() const;
    void append_token(const LmParams& params, int id);
};

using FeatureMap = std::map<std::string, std::vector<double>>;

// Rows from the token embedding except at placeholder positions, which take
// the injected vectors. Every slot_ref must be present in the feature map.
SplicedSequence embed_and_splice(const LmParams& params, const TokenSeq& tokens,
                                 const FeatureMap& features = {});

struct LnCache {
    Matrix hat;  // L x d, normalized pre-affine values
    std::vector<double> rstd;
};

struct LmLayerCache {
    Matrix x_in;
    LnCache ln1;
    Matrix ln1_out;
    Matrix q, k, v;
    Matrix probs;  // (n_heads * L) x L
    Matrix ctx;
    Matrix x_mid;
    LnCache ln2;
    Matrix ln2_out;
    Matrix mlp_pre, mlp_act;
    // Single-adapter training path.
    bool has_lora = false;
    Matrix lora_q_in, lora_q_mid, lora_v_in, lora_v_mid;
};

struct LmCache {
    std::vector<LmLayerCache> layers;
    LnCache lnf;
    Matrix lnf_out;
};

// Final hidden states; logit rows are materialized on demand (the vocabulary
// axis dominates cost, and training touches only the answer span).
struct ForwardResult {
    Matrix lnf_out;  // L x d2
};

// Causal decoder forward pass. In train_mode with a single-adapter stack the
// LoRA dropout mask is drawn from dropout_seed and the cache records
// everything backward needs. Throws on sequences longer than context_len.
ForwardResult lm_forward(const LmParams& params, const AdapterStack& adapters,
                         const SplicedSequence& seq, bool train_mode = false,
                         uint64_t dropout_seed = 0, LmCache* cache = nullptr);

// Prediction row for the token at position j (1 <= j <= L); j = L is the
// next-token row used by generation and scoring.
std::vector<double> logits_for_position(const LmParams& params, const ForwardResult& fwd, int j);

// (L+1) x vocab matrix: row j predicts the token at position j; row 0 is
// zero; row L predicts the continuation. Test/inspection helper.
Matrix full_logits(const LmParams& params, const ForwardResult& fwd);

struct LmGrads {
    Matrix tok_emb, pos_emb;
    std::vector<LmLayerParams> layers;
    Matrix lnf_g, lnf_b;
    Matrix head;

    static LmGrads zeros_like(const LmParams& params);
    std::vector<NamedTensor> named_tensors();
};

struct LoraGrads {
    std::vector<LayerAdapter> layers;

    static LoraGrads zeros_like(const LoraAdapter& adapter);
    std::vector<NamedTensor> named_tensors();
};

struct BackwardRequest {
    bool base = false;
    bool adapter = false;
    bool input = false;
};

// Loss gradient w.r.t. selected logit rows, keyed by prediction position j
// (same indexing as logits_for_position).
using SparseLogitGrads = std::vector<std::pair<int, std::vector<double>>>;

// Exact reverse-mode gradients; accumulates into the provided sinks. The
// cache must come from a train_mode forward with the same single adapter.
void lm_backward(const LmParams& params, const LoraAdapter* adapter, const SplicedSequence& seq,
                 const LmCache& cache, const SparseLogitGrads& dlogits,
                 const BackwardRequest& request, LmGrads* base_grads, LoraGrads* adapter_grads,
                 Matrix* input_grads);

// Greedy decoding from a prompt; stops at eos or max_new tokens. Reserved and
// slot ids are never emitted.
std::string generate(const LmParams& params, const AdapterStack& adapters,
                     const Tokenizer& tokenizer, const SplicedSequence& prompt, int max_new);

// sigmoid(z_yes - z_no) (or sigmoid(z_yes) under SigmoidYes) from the
// next-token logits of a question-only sequence.
double score_yes(const LmParams& params, const AdapterStack& adapters,
                 const SplicedSequence& prompt);

std::vector<double> score_yes_batch(const LmParams& params, const AdapterStack& adapters,
                                    const std::vector<SplicedSequence>& prompts);

// Base params with one adapter folded into wq/wv (W + scale * B A); the
// linearity test oracle.
LmParams merge_adapter(const LmParams& params, const LoraAdapter& adapter);

// FNV-1a over all parameter bytes; stage-isolation checks.
uint64_t params_fingerprint(LmParams& params);
uint64_t tensors_fingerprint(const std::vector<NamedTensor>& tensors);

}  // namespace recfuse
