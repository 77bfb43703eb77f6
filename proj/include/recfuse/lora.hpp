// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "recfuse/tensor.hpp"

namespace recfuse {

struct LoraConfig {
    int rank = 8;
    double alpha = 16.0;
    double dropout = 0.05;
    uint64_t seed = 7;
};

enum class LoraTarget { Query, Value };

// Low-rank pair for one target matrix: delta(x) = (alpha/rank) * B (A x).
struct LoraPair {
    Matrix a;  // rank x d2
    Matrix b;  // d2 x rank
};

struct LayerAdapter {
    LoraPair q, v;
};

// Adapters on the attention query/value projections of every layer.
struct LoraAdapter {
    LoraConfig config;
    std::vector<LayerAdapter> layers;

    double scaling() const { return config.alpha / config.rank; }

    // A gets a small random init, B starts at zero so the initial delta is 0.
    static LoraAdapter init(int n_layers, int d2, const LoraConfig& config);

    std::vector<NamedTensor> named_tensors(const std::string& prefix = "lora");
    bool same_structure(const LoraAdapter& other) const;
};

// Weighted set of adapters applied jointly; the serving-time unit.
using AdapterStack = std::vector<std::pair<const LoraAdapter*, double>>;

// out += sum_n w_n * scale_n * B_n(A_n x), evaluation path (no dropout).
// Zero-weight entries are skipped, so a one-hot stack is bit-identical to the
// single adapter.
void add_lora_delta(const AdapterStack& stack, int layer, LoraTarget target, const double* x,
                    double* out, int d2);

}  // namespace recfuse
