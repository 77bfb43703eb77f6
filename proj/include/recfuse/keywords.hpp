// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace recfuse {

// Lowercase [a-z0-9']+ runs, in order of appearance.
std::vector<std::string> word_tokens(const std::string& text);

bool is_stopword(const std::string& word);

// Corpus-level TF-IDF keyword ranker. Deterministic: score descending, then
// lexicographic. Stands in for the summarization model of the original
// pipeline while keeping the same contract (<= k lowercase keywords).
class KeywordExtractor {
public:
    explicit KeywordExtractor(const std::vector<std::string>& documents);

    std::vector<std::string> extract(const std::string& description, int k = 10) const;

    double idf(const std::string& word) const;

private:
    std::unordered_map<std::string, double> idf_;
    size_t doc_count_ = 0;
};

}  // namespace recfuse
