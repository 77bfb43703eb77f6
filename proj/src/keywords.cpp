// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace recfuse {

namespace {

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> words = {
        "a",
        "about",
        "above",
        "after",
        "again",
        "all",
        "also",
        "am",
        "an",
        "and",
        "any",
        "are",
        "as",
        "at",
        "be",
        "because",
        "been",
        "before",
        "being",
        "below",
        "between",
        "both",
        "but",
        "by",
        "can",
        "could",
        "did",
        "do",
        "does",
        "doing",
        "down",
        "during",
        "each",
        "few",
        "for",
        "from",
        "further",
        "had",
        "has",
        "have",
        "having",
        "he",
        "her",
        "here",
        "hers",
        "him",
        "his",
        "how",
        "i",
        "if",
        "in",
        "into",
        "is",
        "it",
        "its",
        "itself",
        "just",
        "me",
        "more",
        "most",
        "my",
        "no",
        "nor",
        "not",
        "now",
        "of",
        "off",
        "on",
        "once",
        "only",
        "or",
        "other",
        "our",
        "ours",
        "out",
        "over",
        "own",
        "s",
        "same",
        "she",
        "should",
        "so",
        "some",
        "such",
        "t",
        "than",
        "that",
        "the",
        "their",
        "theirs",
        "them",
        "then",
        "there",
        "these",
        "they",
        "this",
        "those",
        "through",
        "to",
        "too",
        "under",
        "until",
        "up",
        "very",
        "was",
        "we",
        "were",
        "what",
        "when",
        "where",
        "which",
        "while",
        "who",
        "whom",
        "why",
        "will",
        "with",
        "would",
        "you",
        "your",
        "yours",
    };
    return words;
}

}  // namespace

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '\'') {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_stopword(const std::string& word) { return stopword_set().count(word) > 0; }

KeywordExtractor::KeywordExtractor(const std::vector<std::string>& documents) {
    doc_count_ = documents.size();
    std::unordered_map<std::string, size_t> df;
    for (const auto& doc : documents) {
        std::unordered_set<std::string> seen;
        for (const auto& w : word_tokens(doc)) {
            if (is_stopword(w)) continue;
            if (seen.insert(w).second) ++df[w];
        }
    }
    for (const auto& [word, count] : df) {
        idf_[word] = std::log((1.0 + static_cast<double>(doc_count_)) /
                              (1.0 + static_cast<double>(count))) +
                     1.0;
    }
}

double KeywordExtractor::idf(const std::string& word) const {
    const auto it = idf_.find(word);
    if (it != idf_.end()) return it->second;
    // Unseen words get the max idf, as if they appeared in no document.
    return std::log((1.0 + static_cast<double>(doc_count_)) / 1.0) + 1.0;
}

std::vector<std::string> KeywordExtractor::extract(const std::string& description, int k) const {
    std::unordered_map<std::string, int> tf;
    for (const auto& w : word_tokens(description)) {
        if (is_stopword(w)) continue;
        ++tf[w];
    }
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(tf.size());
    for (const auto& [word, count] : tf) scored.emplace_back(word, count * idf(word));
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    for (const auto& [word, score] : scored) {
        if (static_cast<int>(out.size()) >= k) break;
        out.push_back(word);
    }
    return out;
}

}  // namespace recfuse
