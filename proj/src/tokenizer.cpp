// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "recfuse/errors.hpp"
#include "recfuse/keywords.hpp"
#include "recfuse/prompts.hpp"

namespace recfuse {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '\''; }

std::string lowercase(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

bool TokenSeq::has_slots() const {
    for (int id : ids)
        if (Tokenizer::is_slot(id)) return true;
    return false;
}

void TokenSeq::push(int id, std::string ref) {
    ids.push_back(id);
    slot_refs.push_back(std::move(ref));
}

void TokenSeq::append(const TokenSeq& other) {
    ids.insert(ids.end(), other.ids.begin(), other.ids.end());
    slot_refs.insert(slot_refs.end(), other.slot_refs.begin(), other.slot_refs.end());
}

Tokenizer Tokenizer::build(const std::vector<std::string>& corpus, int max_words) {
    std::map<std::string, long long> freq;
    for (const auto& text : corpus) {
        for (const auto& w : word_tokens(text)) {
            if (w == "yes" || w == "no") continue;  // reserved
            ++freq[w];
        }
    }
    std::vector<std::pair<std::string, long long>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Tokenizer tk;
    for (const auto& [word, count] : ranked) {
        if (static_cast<int>(tk.words_.size()) >= max_words) break;
        tk.word_to_id_[word] = kWordBase + static_cast<int>(tk.words_.size());
        tk.words_.push_back(word);
    }
    return tk;
}

TokenSeq Tokenizer::encode(const std::string& text) const {
    TokenSeq out;
    const std::string open = kSlotOpen;
    const std::string close = kSlotClose;
    bool last_was_byte = false;

    auto emit_word = [&](const std::string& raw) {
        const std::string w = lowercase(raw);
        if (w == "yes") {
            out.push(kYes);
            last_was_byte = false;
            return;
        }
        if (w == "no") {
            out.push(kNo);
            last_was_byte = false;
            return;
        }
        const auto it = word_to_id_.find(w);
        if (it != word_to_id_.end()) {
            out.push(it->second);
            last_was_byte = false;
            return;
        }
        // Byte fallback. A space byte keeps adjacent fallback words apart.
        if (last_was_byte) out.push(kByteBase + ' ');
        for (unsigned char c : w) out.push(kByteBase + c);
        last_was_byte = true;
    };

    size_t i = 0;
    std::string word;
    auto flush_word = [&]() {
        if (!word.empty()) {
            emit_word(word);
            word.clear();
        }
    };
    while (i < text.size()) {
        if (text.compare(i, open.size(), open) == 0) {
            const size_t end = text.find(close, i + open.size());
            if (end != std::string::npos) {
                const std::string inner = text.substr(i + open.size(), end - i - open.size());
                const bool feat = inner.rfind("FEAT:", 0) == 0;
                const bool user = inner.rfind("USER:", 0) == 0;
                if (feat || user) {
                    flush_word();
                    out.push(feat ? kFeatSlot : kUserSlot,
                             text.substr(i, end + close.size() - i));
                    last_was_byte = false;
                    i = end + close.size();
                    continue;
                }
            }
        }
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_word_char(c)) {
            word.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        flush_word();
        if (!std::isspace(c)) {
            out.push(kByteBase + c);
            last_was_byte = true;
        }
        ++i;
    }
    flush_word();
    return out;
}

std::string Tokenizer::token_text(int id) const {
    switch (id) {
        case kPad: return "<pad>";
        case kBos: return "<bos>";
        case kEos: return "<eos>";
        case kUnk: return "<unk>";
        case kYes: return "Yes";
        case kNo: return "No";
        case kFeatSlot: return std::string(kSlotOpen) + "FEAT" + kSlotClose;
        case kUserSlot: return std::string(kSlotOpen) + "USER" + kSlotClose;
        default: break;
    }
    if (is_byte(id)) return std::string(1, static_cast<char>(id - kByteBase));
    const int w = id - kWordBase;
    if (w >= 0 && w < static_cast<int>(words_.size())) return words_[w];
    throw Error("token id out of range: " + std::to_string(id));
}

std::string Tokenizer::decode(const std::vector<int>& ids) const {
    std::string out;
    bool prev_byte = false;
    for (int id : ids) {
        if (id == kBos || id == kEos || id == kPad) continue;
        const bool cur_byte = is_byte(id);
        const std::string piece = token_text(id);
        if (!out.empty() && !(cur_byte && prev_byte)) out += ' ';
        out += piece;
        prev_byte = cur_byte;
    }
    return out;
}

void Tokenizer::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write vocabulary: " + path);
    f << "recfuse-vocab v1\n" << words_.size() << "\n";
    for (const auto& w : words_) f << w << "\n";
}

Tokenizer Tokenizer::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read vocabulary: " + path);
    std::string header;
    std::getline(f, header);
    if (header != "recfuse-vocab v1") throw Error("unknown vocabulary format in " + path);
    size_t n = 0;
    f >> n;
    std::string line;
    std::getline(f, line);
    Tokenizer tk;
    for (size_t i = 0; i < n; ++i) {
        if (!std::getline(f, line)) throw Error("truncated vocabulary file: " + path);
        tk.word_to_id_[line] = kWordBase + static_cast<int>(tk.words_.size());
        tk.words_.push_back(line);
    }
    return tk;
}

}  // namespace recfuse
