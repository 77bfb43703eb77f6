// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace recfuse {

struct ScoredItem {
    int item_id = 0;
    double score = 0.0;  // in [0,1]
    int label = 0;       // {0,1}
};

// Per-user scored test items.
struct ScoredList {
    int user_id = 0;
    std::vector<ScoredItem> items;
};

struct MetricReport {
    double auc = 0.0;
    double uauc = 0.0;
    double ndcg_at_k = 0.0;
    double map_at_k = 0.0;
    double meteor_mean = 0.0;
    int k = 5;
    int users_skipped = 0;     // single-class users excluded from UAUC
    int meteor_samples = 0;
    bool bleurt_available = false;  // requires a learned scorer; always false here

    std::string human_table() const;
    std::string tsv_rows() const;
};

// Probability that a random positive outranks a random negative; ties 0.5.
// Throws if only one class is present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Unweighted mean of per-user AUC over users with both classes.
// users_skipped (optional) receives the count of ineligible users.
double uauc(const std::vector<ScoredList>& lists, int* users_skipped = nullptr);

// Binary-gain NDCG at k over labels ranked by (score desc, item_id asc).
// Zero positives anywhere -> 0.
double ndcg_at_k(const std::vector<int>& ranked_labels, int k = 5);

// Average precision truncated at k, normalized by min(k, positives).
double map_at_k(const std::vector<int>& ranked_labels, int k = 5);

// Labels of a ScoredList sorted by (score desc, item_id asc).
std::vector<int> ranked_labels(const ScoredList& list);

// Unigram METEOR with exact-then-stem alignment, harmonic F (recall-weighted
// 9:1) and the 0.5*(chunks/m)^3 fragmentation penalty. No synonym stage.
double meteor(const std::string& candidate, const std::string& reference);

// Light suffix stripper used by the METEOR stem stage.
std::string stem(const std::string& word);

// Full report over per-user scored lists; pooled AUC over all entries.
MetricReport evaluate_ranking(const std::vector<ScoredList>& lists, int k = 5);

}  // namespace recfuse
