// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recfuse/errors.hpp"
#include "recfuse/keywords.hpp"
#include "recfuse/tensor.hpp"

namespace recfuse {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw Error("auc: scores/labels size mismatch");
    const size_t n = scores.size();
    size_t pos = 0;
    for (int l : labels) pos += (l == 1);
    const size_t neg = n - pos;
    if (pos == 0 || neg == 0) throw Error("auc: needs both classes");

    // Rank-sum formulation; tied scores share their average rank, which is
    // equivalent to counting tied (pos, neg) pairs as 0.5.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    double pos_rank_sum = 0.0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (size_t t = i; t < j; ++t)
            if (labels[order[t]] == 1) pos_rank_sum += avg_rank;
        i = j;
    }
    const double p = static_cast<double>(pos);
    return (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double uauc(const std::vector<ScoredList>& lists, int* users_skipped) {
    CompensatedSum sum;
    int eligible = 0, skipped = 0;
    for (const auto& list : lists) {
        std::vector<double> scores;
        std::vector<int> labels;
        scores.reserve(list.items.size());
        labels.reserve(list.items.size());
        for (const auto& it : list.items) {
            scores.push_back(it.score);
            labels.push_back(it.label);
        }
        const size_t pos = static_cast<size_t>(std::count(labels.begin(), labels.end(), 1));
        if (pos == 0 || pos == labels.size()) {
            ++skipped;
            continue;
        }
        sum.add(auc(scores, labels));
        ++eligible;
    }
    if (users_skipped) *users_skipped = skipped;
    if (eligible == 0) throw Error("uauc: no user has both classes");
    return sum.value() / eligible;
}

std::vector<int> ranked_labels(const ScoredList& list) {
    std::vector<ScoredItem> items = list.items;
    std::sort(items.begin(), items.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.item_id < b.item_id;
    });
    std::vector<int> labels;
    labels.reserve(items.size());
    for (const auto& it : items) labels.push_back(it.label);
    return labels;
}

double ndcg_at_k(const std::vector<int>& ranked, int k) {
    if (ranked.empty()) throw Error("ndcg_at_k: empty list");
    const int limit = std::min<int>(k, static_cast<int>(ranked.size()));
    double dcg = 0.0;
    for (int r = 0; r < limit; ++r)
        dcg += ranked[r] / std::log2(static_cast<double>(r) + 2.0);

    std::vector<int> ideal = ranked;
    std::sort(ideal.begin(), ideal.end(), std::greater<int>());
    double idcg = 0.0;
    for (int r = 0; r < limit; ++r)
        idcg += ideal[r] / std::log2(static_cast<double>(r) + 2.0);
    if (idcg == 0.0) return 0.0;
    return dcg / idcg;
}

double map_at_k(const std::vector<int>& ranked, int k) {
    if (ranked.empty()) throw Error("map_at_k: empty list");
    const int limit = std::min<int>(k, static_cast<int>(ranked.size()));
    const int positives = static_cast<int>(std::count(ranked.begin(), ranked.end(), 1));
    if (positives == 0) return 0.0;
    double ap = 0.0;
    int hits = 0;
    for (int r = 0; r < limit; ++r) {
        if (ranked[r] == 1) {
            ++hits;
            ap += static_cast<double>(hits) / static_cast<double>(r + 1);
        }
    }
    return ap / std::min(k, positives);
}

std::string stem(const std::string& word) {
    auto ends_with = [&](const char* suffix) {
        const size_t n = std::string(suffix).size();
        return word.size() > n && word.compare(word.size() - n, n, suffix) == 0;
    };
    auto strip = [&](size_t n) { return word.substr(0, word.size() - n); };
    // Keep at least 3 characters of stem so short words survive.
    if (ends_with("ies") && word.size() >= 6) return strip(3) + "y";
    if (ends_with("ing") && word.size() >= 6) return strip(3);
    if (ends_with("ed") && word.size() >= 5) return strip(2);
    if (ends_with("es") && word.size() >= 5) return strip(2);
    if (ends_with("ly") && word.size() >= 5) return strip(2);
    if (ends_with("s") && !ends_with("ss") && word.size() >= 4) return strip(1);
    return word;
}

namespace {

// Greedy left-to-right stage matcher: each candidate token takes the first
// unmatched reference token with the same key.
void match_stage(const std::vector<std::string>& cand_keys,
                 const std::vector<std::string>& ref_keys, std::vector<int>& cand_to_ref,
                 std::vector<bool>& ref_used) {
    for (size_t ci = 0; ci < cand_keys.size(); ++ci) {
        if (cand_to_ref[ci] >= 0) continue;
        for (size_t ri = 0; ri < ref_keys.size(); ++ri) {
            if (ref_used[ri] || cand_keys[ci] != ref_keys[ri]) continue;
            cand_to_ref[ci] = static_cast<int>(ri);
            ref_used[ri] = true;
            break;
        }
    }
}

}  // namespace

double meteor(const std::string& candidate, const std::string& reference) {
    const std::vector<std::string> cand = word_tokens(candidate);
    const std::vector<std::string> ref = word_tokens(reference);
    if (cand.empty() || ref.empty()) return 0.0;

    std::vector<int> cand_to_ref(cand.size(), -1);
    std::vector<bool> ref_used(ref.size(), false);
    match_stage(cand, ref, cand_to_ref, ref_used);

    std::vector<std::string> cand_stems(cand.size()), ref_stems(ref.size());
    for (size_t i = 0; i < cand.size(); ++i) cand_stems[i] = stem(cand[i]);
    for (size_t i = 0; i < ref.size(); ++i) ref_stems[i] = stem(ref[i]);
    match_stage(cand_stems, ref_stems, cand_to_ref, ref_used);

    int m = 0;
    for (int r : cand_to_ref) m += (r >= 0);
    if (m == 0) return 0.0;

    const double precision = static_cast<double>(m) / cand.size();
    const double recall = static_cast<double>(m) / ref.size();
    const double f = 10.0 * precision * recall / (recall + 9.0 * precision);

    // Chunks: maximal runs where candidate and reference indices advance
    // together by one.
    int chunks = 0;
    int prev_ref = -2;
    for (size_t ci = 0; ci < cand.size(); ++ci) {
        const int ri = cand_to_ref[ci];
        if (ri < 0) {
            prev_ref = -2;
            continue;
        }
        if (ri != prev_ref + 1) ++chunks;
        prev_ref = ri;
    }
    const double frag = static_cast<double>(chunks) / m;
    const double penalty = 0.5 * frag * frag * frag;
    return f * (1.0 - penalty);
}

MetricReport evaluate_ranking(const std::vector<ScoredList>& lists, int k) {
    MetricReport report;
    report.k = k;

    std::vector<double> all_scores;
    std::vector<int> all_labels;
    CompensatedSum ndcg_sum, map_sum;
    int users = 0;
    for (const auto& list : lists) {
        if (list.items.empty()) continue;
        for (const auto& it : list.items) {
            all_scores.push_back(it.score);
            all_labels.push_back(it.label);
        }
        const auto ranked = ranked_labels(list);
        ndcg_sum.add(ndcg_at_k(ranked, k));
        map_sum.add(map_at_k(ranked, k));
        ++users;
    }
    if (users == 0) throw Error("evaluate_ranking: no scored users");
    report.auc = auc(all_scores, all_labels);
    report.uauc = uauc(lists, &report.users_skipped);
    report.ndcg_at_k = ndcg_sum.value() / users;
    report.map_at_k = map_sum.value() / users;
    return report;
}

std::string MetricReport::human_table() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << "metric      value\n";
    os << "AUC         " << auc << "\n";
    os << "UAUC        " << uauc << "  (skipped " << users_skipped << " single-class users)\n";
    os << "NDCG@" << k << "      " << ndcg_at_k << "\n";
    os << "MAP@" << k << "       " << map_at_k << "\n";
    if (meteor_samples > 0)
        os << "METEOR      " << meteor_mean << "  (" << meteor_samples << " samples)\n";
    os << "BLEURT      " << (bleurt_available ? "-" : "unavailable") << "\n";
    return os.str();
}

std::string MetricReport::tsv_rows() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << "auc\t" << auc << "\n";
    os << "uauc\t" << uauc << "\n";
    os << "ndcg@" << k << "\t" << ndcg_at_k << "\n";
    os << "map@" << k << "\t" << map_at_k << "\n";
    os << "meteor\t" << meteor_mean << "\n";
    os << "meteor_samples\t" << meteor_samples << "\n";
    os << "users_skipped\t" << users_skipped << "\n";
    os << "bleurt\tunavailable\n";
    return os.str();
}

}  // namespace recfuse
