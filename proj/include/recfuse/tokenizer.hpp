// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace recfuse {

// Token ids with slot payloads. slot_refs runs parallel to ids and carries
// the full placeholder text ("〈FEAT:7〉") at slot positions, "" elsewhere.
struct TokenSeq {
    std::vector<int> ids;
    std::vector<std::string> slot_refs;

    size_t size() const { return ids.size(); }
    bool has_slots() const;
    void push(int id, std::string ref = "");
    void append(const TokenSeq& other);
};

// Lowercased word-level tokenizer with byte fallback. "Yes" and "No" are
// reserved single tokens; feature/user placeholders map to reserved slot ids
// that plain text can never produce.
class Tokenizer {
public:
    static constexpr int kPad = 0;
    static constexpr int kBos = 1;
    static constexpr int kEos = 2;
    static constexpr int kUnk = 3;
    static constexpr int kYes = 4;
    static constexpr int kNo = 5;
    static constexpr int kFeatSlot = 6;
    static constexpr int kUserSlot = 7;
    static constexpr int kByteBase = 8;           // 256 byte tokens
    static constexpr int kWordBase = kByteBase + 256;

    Tokenizer() = default;

    // Word vocabulary from corpus frequency (ties broken lexicographically).
    static Tokenizer build(const std::vector<std::string>& corpus, int max_words = 4096);

    TokenSeq encode(const std::string& text) const;
    std::string decode(const std::vector<int>& ids) const;
    std::string token_text(int id) const;

    int vocab_size() const { return kWordBase + static_cast<int>(words_.size()); }
    int word_count() const { return static_cast<int>(words_.size()); }

    static bool is_slot(int id) { return id == kFeatSlot || id == kUserSlot; }
    static bool is_byte(int id) { return id >= kByteBase && id < kWordBase; }

    // Ids that greedy decoding must never emit.
    static bool is_generation_banned(int id) {
        return id == kPad || id == kBos || id == kUnk || is_slot(id);
    }

    void save(const std::string& path) const;
    static Tokenizer load(const std::string& path);

private:
    std::vector<std::string> words_;                   // id - kWordBase -> word
    std::unordered_map<std::string, int> word_to_id_;  // word -> absolute id
};

}  // namespace recfuse
