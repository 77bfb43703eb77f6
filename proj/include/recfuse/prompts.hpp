// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "recfuse/dataset.hpp"

namespace recfuse {

// Reserved placeholder tokens spliced with projected embeddings downstream.
// The brackets are U+3008 / U+3009 so they can never collide with prose.
extern const char* const kSlotOpen;
extern const char* const kSlotClose;

std::string feature_placeholder(int item_id);  // 〈FEAT:id〉
std::string user_placeholder(int user_id);     // 〈USER:id〉

struct PromptStyle {
    std::string item_noun = "item";  // singular; "s" is appended for plurals
};

// "<title> with feature 〈FEAT:id〉 (label: yes) with description: kw1, kw2"
// The feature clause is omitted when with_feature_slot is false.
std::string render_item_line(const Item& item, int label, bool with_feature_slot);

// Recommendation question/answer pair. With user_slot on, the question
// carries both the user placeholder sentence and the target feature
// placeholder; with it off the prompt is pure text.
PromptInstance render_rec_prompt(const HistoryWindow& history, bool user_slot,
                                 const PromptStyle& style = {});

// First-turn query sent to the reasoning oracle.
std::string render_first_turn(const HistoryWindow& history, const PromptStyle& style = {});

// One of the three reflect-turn variants (index 0..2), cycled on retries.
std::string render_reflect_turn(int variant, int correct_label, const std::string& target_title,
                                const PromptStyle& style = {});

constexpr int kReflectVariantCount = 3;

}  // namespace recfuse
