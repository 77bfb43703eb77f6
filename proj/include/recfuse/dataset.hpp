// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace recfuse {

// One timestamped user-item event. `rating` is in raw dataset units,
// `label` is the binarized preference.
struct Interaction {
    int user_id = 0;
    int item_id = 0;
    double rating = 0.0;
    int label = 0;
    int64_t timestamp = 0;
};

struct Item {
    int item_id = 0;
    std::string title;
    std::string description;
    std::vector<std::string> keywords;  // <= 10, lowercase, no duplicates
};

// Interactions sorted by (user_id, timestamp, item_id). Every referenced
// item_id has an entry in `items`.
struct Dataset {
    std::vector<Interaction> interactions;
    std::map<int, Item> items;
    int user_count = 0;
    int item_count = 0;

    void sort_interactions();
    void validate() const;  // throws Error on invariant violation
};

// Chronological slice of a user's events preceding one target event.
struct HistoryWindow {
    std::vector<std::pair<Item, int>> entries;  // (item, label), oldest first
    Item target;
    int target_label = 0;
    int user_id = 0;
};

enum class PromptKind { Thinking, Recommend };

struct PromptInstance {
    PromptKind kind = PromptKind::Recommend;
    std::string question_text;
    std::string answer_text;
    int label = 0;
    int user_id = 0;
    int item_id = 0;
};

struct IngestOptions {
    std::string delimiter = "::";  // "::" or "\t"
};

struct IngestStats {
    size_t total_rows = 0;
    size_t malformed_rows = 0;
};

// Parse a delimited ratings file (user, item, rating, timestamp per row).
// Malformed rows are skipped and counted; a file with zero valid rows throws.
Dataset ingest_raw(const std::string& path, const IngestOptions& options = {},
                   IngestStats* stats = nullptr);

// Attach item metadata (id, title, description per row) to a dataset.
// Interactions referencing items absent from the metadata get a stub entry
// titled "item <id>".
void load_items(Dataset& dataset, const std::string& path, const IngestOptions& options = {});

// 1 iff rating > threshold. Strict, per the binarization rule.
int binarize(double rating, double threshold);

void binarize_dataset(Dataset& dataset, double threshold);

struct SplitResult {
    Dataset train, valid, test;
};

// Assign each interaction to train (t <= train_end), valid
// (train_end < t <= valid_end) or test (t > valid_end).
SplitResult temporal_split(const Dataset& dataset, int64_t train_end, int64_t valid_end);

struct FilterResult {
    Dataset dataset;                 // ids re-densified
    std::vector<int> user_raw_ids;   // dense id -> raw id
    std::vector<int> item_raw_ids;
    size_t removed_users = 0;
    size_t removed_items = 0;
    int rounds = 0;
};

// Remove users and items with fewer than min_interactions events, iterating
// to a fixed point, then re-densify ids (ascending raw id order).
FilterResult filter_sparse(const Dataset& dataset, int min_interactions = 20);

// The ten most recent (or fewer) events of `user` strictly before
// `target_index` in the dataset's interaction order.
HistoryWindow build_history_window(const Dataset& dataset, size_t target_index,
                                   int max_history = 10);

}  // namespace recfuse
