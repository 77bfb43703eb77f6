// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/lora.hpp"

#include <cmath>

#include "recfuse/errors.hpp"
#include "recfuse/rng.hpp"

namespace recfuse {

LoraAdapter LoraAdapter::init(int n_layers, int d2, const LoraConfig& config) {
    if (config.rank < 1) throw Error("lora rank must be >= 1");
    LoraAdapter ad;
    ad.config = config;
    ad.layers.resize(n_layers);
    Rng rng(mix_seed(config.seed, 0x6c6f7261ULL));
    const double std_a = 1.0 / std::sqrt(static_cast<double>(config.rank));
    for (auto& layer : ad.layers) {
        for (LoraPair* pair : {&layer.q, &layer.v}) {
            pair->a = Matrix(config.rank, d2);
            pair->b = Matrix(d2, config.rank);
            for (double& v : pair->a.a) v = rng.normal(0.0, std_a);
        }
    }
    return ad;
}

std::vector<NamedTensor> LoraAdapter::named_tensors(const std::string& prefix) {
    std::vector<NamedTensor> out;
    for (size_t l = 0; l < layers.size(); ++l) {
        const std::string base = prefix + ".layer" + std::to_string(l);
        out.push_back({base + ".q.a", &layers[l].q.a});
        out.push_back({base + ".q.b", &layers[l].q.b});
        out.push_back({base + ".v.a", &layers[l].v.a});
        out.push_back({base + ".v.b", &layers[l].v.b});
    }
    return out;
}

bool LoraAdapter::same_structure(const LoraAdapter& other) const {
    if (layers.size() != other.layers.size() || config.rank != other.config.rank) return false;
    for (size_t l = 0; l < layers.size(); ++l) {
        if (!layers[l].q.a.same_shape(other.layers[l].q.a) ||
            !layers[l].q.b.same_shape(other.layers[l].q.b) ||
            !layers[l].v.a.same_shape(other.layers[l].v.a) ||
            !layers[l].v.b.same_shape(other.layers[l].v.b))
            return false;
    }
    return true;
}

void add_lora_delta(const AdapterStack& stack, int layer, LoraTarget target, const double* x,
                    double* out, int d2) {
    for (const auto& [adapter, weight] : stack) {
        if (weight == 0.0) continue;
        const LoraPair& pair = target == LoraTarget::Query ? adapter->layers[layer].q
                                                           : adapter->layers[layer].v;
        const int r = pair.a.rows;
        std::vector<double> mid(r);
        matvec(pair.a, x, mid.data());
        const double s = weight * adapter->scaling();
        for (int i = 0; i < d2; ++i) out[i] += s * dot(pair.b.row(i), mid.data(), r);
    }
}

}  // namespace recfuse
