// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/prompts.hpp"

#include "recfuse/errors.hpp"

namespace recfuse {

const char* const kSlotOpen = "〈";
const char* const kSlotClose = "〉";

std::string feature_placeholder(int item_id) {
    return std::string(kSlotOpen) + "FEAT:" + std::to_string(item_id) + kSlotClose;
}

std::string user_placeholder(int user_id) {
    return std::string(kSlotOpen) + "USER:" + std::to_string(user_id) + kSlotClose;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string keyword_clause(const Item& item) {
    return "with description: " + join(item.keywords, ", ");
}

}  // namespace

std::string render_item_line(const Item& item, int label, bool with_feature_slot) {
    if (item.title.empty()) throw Error("cannot render item with empty title");
    std::string line = item.title;
    if (with_feature_slot) line += " with feature " + feature_placeholder(item.item_id);
    line += std::string(" (label: ") + (label == 1 ? "yes" : "no") + ") ";
    line += keyword_clause(item);
    return line;
}

PromptInstance render_rec_prompt(const HistoryWindow& history, bool user_slot,
                                 const PromptStyle& style) {
    if (history.entries.empty()) throw Error("history window is empty");
    const std::string& noun = style.item_noun;

    std::vector<std::string> lines;
    lines.reserve(history.entries.size());
    for (const auto& [item, label] : history.entries)
        lines.push_back(render_item_line(item, label, user_slot));

    std::string q = "#Question: A user has given ratings to the following " + noun + "s: " +
                    join(lines, "; ") + ". ";
    if (user_slot) {
        q += "Additionally, we have information about the user's preferences encoded in the "
             "feature " +
             user_placeholder(history.user_id) + ". ";
    }
    q += "Based on the descriptions and the user's enjoyment of each " + noun +
         " in the historical sequence, construct a persona of the user's preferences and "
         "reevaluate whether the user would enjoy the " +
         noun + " titled " + history.target.title;
    if (user_slot) q += " with the feature " + feature_placeholder(history.target.item_id);
    q += ". Please begin your analysis with \"Yes\" or \"No\".\n#Answer:";

    PromptInstance out;
    out.kind = PromptKind::Recommend;
    out.question_text = std::move(q);
    out.answer_text = history.target_label == 1 ? "Yes" : "No";
    out.label = history.target_label;
    out.user_id = history.user_id;
    out.item_id = history.target.item_id;
    return out;
}

std::string render_first_turn(const HistoryWindow& history, const PromptStyle& style) {
    const std::string& noun = style.item_noun;
    std::vector<std::string> liked;
    for (const auto& [item, label] : history.entries) {
        if (label == 1) liked.push_back(item.title + " " + keyword_clause(item));
    }
    if (liked.empty()) liked.push_back("(none)");
    return "A user has given high ratings to the following " + noun + "s: " + join(liked, "; ") +
           ". Using all available information, make a prediction about whether the user would "
           "enjoy the " +
           noun + " titled " + history.target.title + "?";
}

std::string render_reflect_turn(int variant, int correct_label, const std::string& target_title,
                                const PromptStyle& style) {
    const std::string answer = correct_label == 1 ? "Yes" : "No";
    const std::string& noun = style.item_noun;
    switch (variant % kReflectVariantCount) {
        case 0:
            return "The correct response is " + answer +
                   ". Reflect on multiple aspects based on historical information and explain "
                   "the reason for the oversight based on the previous analysis. Reanalyze to "
                   "make a prediction about whether the user would enjoy the " +
                   noun + " titled " + target_title + "?";
        case 1:
            return "The accurate answer is " + answer +
                   ". Delve into various aspects considering historical data, elucidate the "
                   "cause of the oversight according to the preceding analysis. Conduct a "
                   "reanalysis to forecast whether the user will take pleasure in the " +
                   noun + " named " + target_title + "?";
        default:
            return "The right response is " + answer +
                   ". Reflect on a variety of aspects with reference to historical information, "
                   "and account for the oversight based on the earlier analysis. Reanalyze to "
                   "determine whether the user would appreciate the " +
                   noun + " titled " + target_title + "?";
    }
}

}  // namespace recfuse
