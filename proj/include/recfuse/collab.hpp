// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "recfuse/dataset.hpp"
#include "recfuse/tensor.hpp"

namespace recfuse {

// Pluggable source of user embeddings for grouping; matrix factorization is
// the one shipped implementation.
class UserEmbedder {
public:
    virtual ~UserEmbedder() = default;
    virtual int user_count() const = 0;
    virtual int dim() const = 0;
    virtual std::vector<double> user_embedding(int user_id) const = 0;
};

struct CollabTrainConfig {
    int d1 = 64;
    double learning_rate = 1e-3;
    double weight_decay = 1e-5;
    int epochs = 30;
    int batch_size = 256;
    uint64_t seed = 1;
    enum class Optimizer { Adam, Sgd } optimizer = Optimizer::Adam;
    bool log_epochs = false;
};

// Matrix factorization over binary labels, BCE on sigmoid(e_u . e_i).
class CollabModel : public UserEmbedder {
public:
    CollabModel() = default;
    CollabModel(int users, int items, int d1, uint64_t seed);

    int user_count() const override { return user_vectors_.rows; }
    int item_count() const { return item_vectors_.rows; }
    int dim() const override { return d1_; }

    std::vector<double> user_embedding(int user_id) const override;
    std::vector<double> item_embedding(int item_id) const;

    const double* user_row(int user_id) const;
    const double* item_row(int item_id) const;

    // sigmoid(e_u . e_i)
    double score(int user_id, int item_id) const;

    Matrix& user_vectors() { return user_vectors_; }
    Matrix& item_vectors() { return item_vectors_; }
    const Matrix& user_vectors() const { return user_vectors_; }
    const Matrix& item_vectors() const { return item_vectors_; }

    std::vector<NamedTensor> named_tensors();

private:
    Matrix user_vectors_;  // users x d1
    Matrix item_vectors_;  // items x d1
    int d1_ = 0;
};

// Minibatch training with sparse per-row updates; deterministic given the
// seed. Throws DivergenceError on non-finite loss.
CollabModel train_mf(const Dataset& train, const CollabTrainConfig& config);

// One optimizer step on a single (user, item, label) triple; exposed so the
// sparse-update contract is testable.
void mf_single_step(CollabModel& model, int user_id, int item_id, int label,
                    const CollabTrainConfig& config);

double sigmoid(double x);

}  // namespace recfuse
