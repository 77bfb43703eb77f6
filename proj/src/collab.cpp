// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/collab.hpp"

#include <cmath>
#include <iostream>
#include <unordered_map>

#include "recfuse/errors.hpp"
#include "recfuse/rng.hpp"

namespace recfuse {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

CollabModel::CollabModel(int users, int items, int d1, uint64_t seed) : d1_(d1) {
    user_vectors_ = Matrix(users, d1);
    item_vectors_ = Matrix(items, d1);
    // Small symmetric init keeps sigmoid(e_u . e_i) away from saturation.
    const double bound = 0.1 / std::sqrt(static_cast<double>(d1));
    Rng rng(mix_seed(seed, 0x636f6c6cULL));
    for (double& v : user_vectors_.a) v = rng.uniform(-bound, bound);
    for (double& v : item_vectors_.a) v = rng.uniform(-bound, bound);
}

std::vector<double> CollabModel::user_embedding(int user_id) const {
    const double* r = user_row(user_id);
    return std::vector<double>(r, r + d1_);
}

std::vector<double> CollabModel::item_embedding(int item_id) const {
    const double* r = item_row(item_id);
    return std::vector<double>(r, r + d1_);
}

const double* CollabModel::user_row(int user_id) const {
    if (user_id < 0 || user_id >= user_vectors_.rows)
        throw Error("unknown user id " + std::to_string(user_id));
    return user_vectors_.row(user_id);
}

const double* CollabModel::item_row(int item_id) const {
    if (item_id < 0 || item_id >= item_vectors_.rows)
        throw Error("unknown item id " + std::to_string(item_id));
    return item_vectors_.row(item_id);
}

double CollabModel::score(int user_id, int item_id) const {
    return sigmoid(dot(user_row(user_id), item_row(item_id), d1_));
}

std::vector<NamedTensor> CollabModel::named_tensors() {
    return {{"collab.user_vectors", &user_vectors_}, {"collab.item_vectors", &item_vectors_}};
}

namespace {

// Adam moments for touched rows only; untouched rows stay bit-identical.
struct SparseAdam {
    Matrix m, v;
    long long t = 0;

    explicit SparseAdam(const Matrix& shape) : m(shape.rows, shape.cols), v(shape.rows, shape.cols) {}

    void update_row(Matrix& w, int row, const double* grad, const CollabTrainConfig& cfg) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        const double bc1 = 1.0 - std::pow(b1, static_cast<double>(t));
        const double bc2 = 1.0 - std::pow(b2, static_cast<double>(t));
        double* wr = w.row(row);
        double* mr = m.row(row);
        double* vr = v.row(row);
        for (int j = 0; j < w.cols; ++j) {
            const double g = grad[j];
            mr[j] = b1 * mr[j] + (1.0 - b1) * g;
            vr[j] = b2 * vr[j] + (1.0 - b2) * g * g;
            wr[j] -= cfg.learning_rate * (mr[j] / bc1) / (std::sqrt(vr[j] / bc2) + eps);
        }
    }
};

struct RowGradients {
    std::unordered_map<int, std::vector<double>> user, item;

    std::vector<double>& user_grad(int id, int d) {
        auto& g = user[id];
        if (g.empty()) g.assign(d, 0.0);
        return g;
    }
    std::vector<double>& item_grad(int id, int d) {
        auto& g = item[id];
        if (g.empty()) g.assign(d, 0.0);
        return g;
    }
};

// Accumulates the gradient of BCE(sigmoid(u.i), label) + weight decay for one
// sample. Returns the sample loss.
double accumulate_sample(const CollabModel& model, const Interaction& e,
                         const CollabTrainConfig& cfg, RowGradients& grads) {
    const int d = model.dim();
    const double* u = model.user_row(e.user_id);
    const double* i = model.item_row(e.item_id);
    const double z = dot(u, i, d);
    const double p = sigmoid(z);
    const double err = p - e.label;

    auto& gu = grads.user_grad(e.user_id, d);
    auto& gi = grads.item_grad(e.item_id, d);
    for (int j = 0; j < d; ++j) {
        gu[j] += err * i[j] + cfg.weight_decay * u[j];
        gi[j] += err * u[j] + cfg.weight_decay * i[j];
    }
    // Stable BCE via softplus.
    const double softplus_z = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    const double softplus_neg = softplus_z - z;
    return e.label == 1 ? softplus_neg : softplus_z;
}

void apply_gradients(CollabModel& model, RowGradients& grads, SparseAdam& adam_u,
                     SparseAdam& adam_i, const CollabTrainConfig& cfg, double inv_batch) {
    if (cfg.optimizer == CollabTrainConfig::Optimizer::Adam) {
        ++adam_u.t;
        ++adam_i.t;
    }
    // Deterministic application order.
    std::vector<int> uids, iids;
    uids.reserve(grads.user.size());
    iids.reserve(grads.item.size());
    for (auto& [id, g] : grads.user) uids.push_back(id);
    for (auto& [id, g] : grads.item) iids.push_back(id);
    std::sort(uids.begin(), uids.end());
    std::sort(iids.begin(), iids.end());

    for (int id : uids) {
        auto& g = grads.user[id];
        for (double& v : g) v *= inv_batch;
        if (cfg.optimizer == CollabTrainConfig::Optimizer::Adam)
            adam_u.update_row(model.user_vectors(), id, g.data(), cfg);
        else
            axpy(-cfg.learning_rate, g.data(), model.user_vectors().row(id), model.dim());
    }
    for (int id : iids) {
        auto& g = grads.item[id];
        for (double& v : g) v *= inv_batch;
        if (cfg.optimizer == CollabTrainConfig::Optimizer::Adam)
            adam_i.update_row(model.item_vectors(), id, g.data(), cfg);
        else
            axpy(-cfg.learning_rate, g.data(), model.item_vectors().row(id), model.dim());
    }
}

}  // namespace

void mf_single_step(CollabModel& model, int user_id, int item_id, int label,
                    const CollabTrainConfig& config) {
    Interaction e;
    e.user_id = user_id;
    e.item_id = item_id;
    e.label = label;
    RowGradients grads;
    accumulate_sample(model, e, config, grads);
    SparseAdam adam_u(model.user_vectors()), adam_i(model.item_vectors());
    apply_gradients(model, grads, adam_u, adam_i, config, 1.0);
}

CollabModel train_mf(const Dataset& train, const CollabTrainConfig& config) {
    if (train.interactions.empty()) throw Error("train_mf: empty dataset");
    if (config.d1 < 1 || config.learning_rate <= 0.0)
        throw Error("train_mf: invalid configuration");

    int max_user = 0, max_item = 0;
    for (const auto& e : train.interactions) {
        max_user = std::max(max_user, e.user_id);
        max_item = std::max(max_item, e.item_id);
    }
    const int users = std::max(train.user_count, max_user + 1);
    const int items = std::max(train.item_count, max_item + 1);

    CollabModel model(users, items, config.d1, config.seed);
    SparseAdam adam_u(model.user_vectors()), adam_i(model.item_vectors());
    Rng rng(mix_seed(config.seed, 0x6d665f74ULL));

    std::vector<size_t> order(train.interactions.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    const int batch = std::max(1, config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (size_t start = 0; start < order.size(); start += batch) {
            const size_t end = std::min(order.size(), start + batch);
            RowGradients grads;
            double batch_loss = 0.0;
            for (size_t i = start; i < end; ++i)
                batch_loss += accumulate_sample(model, train.interactions[order[i]], config, grads);
            const double denom = static_cast<double>(end - start);
            if (!std::isfinite(batch_loss))
                throw DivergenceError("train_mf: non-finite loss at epoch " +
                                      std::to_string(epoch));
            apply_gradients(model, grads, adam_u, adam_i, config, 1.0 / denom);
            epoch_loss += batch_loss;
        }
        if (config.log_epochs)
            std::cerr << "mf epoch " << epoch << " loss "
                      << epoch_loss / static_cast<double>(order.size()) << "\n";
    }
    return model;
}

}  // namespace recfuse
