// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#include "recfuse/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "recfuse/errors.hpp"

namespace recfuse {

namespace {

std::vector<std::string> split_fields(const std::string& line, const std::string& delim) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t p = line.find(delim, start);
        if (p == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, p - start));
        start = p + delim.size();
    }
    return out;
}

bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stoll(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size() && std::isfinite(out);
}

}  // namespace

void Dataset::sort_interactions() {
    std::sort(interactions.begin(), interactions.end(),
              [](const Interaction& a, const Interaction& b) {
                  if (a.user_id != b.user_id) return a.user_id < b.user_id;
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  return a.item_id < b.item_id;
              });
}

void Dataset::validate() const {
    std::set<std::tuple<int, int, int64_t>> seen;
    for (size_t i = 0; i < interactions.size(); ++i) {
        const Interaction& e = interactions[i];
        if (e.label != 0 && e.label != 1) throw Error("interaction label outside {0,1}");
        if (e.timestamp < 0) throw Error("negative timestamp");
        if (!items.empty() && items.find(e.item_id) == items.end())
            throw Error("interaction references unknown item " + std::to_string(e.item_id));
        if (!seen.insert({e.user_id, e.item_id, e.timestamp}).second)
            throw Error("duplicate (user, item, timestamp) tuple");
        if (i > 0) {
            const Interaction& p = interactions[i - 1];
            if (p.user_id > e.user_id ||
                (p.user_id == e.user_id && p.timestamp > e.timestamp))
                throw Error("interactions not sorted by (user, timestamp)");
        }
    }
    for (const auto& [id, item] : items) {
        if (item.title.empty()) throw Error("item " + std::to_string(id) + " has empty title");
        if (item.keywords.size() > 10) throw Error("item has more than 10 keywords");
        std::unordered_set<std::string> kw(item.keywords.begin(), item.keywords.end());
        if (kw.size() != item.keywords.size()) throw Error("duplicate keywords on item");
    }
}

Dataset ingest_raw(const std::string& path, const IngestOptions& options, IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open ratings file: " + path);

    Dataset ds;
    IngestStats local;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++local.total_rows;
        const auto fields = split_fields(line, options.delimiter);
        long long user = 0, item = 0, ts = 0;
        double rating = 0.0;
        if (fields.size() != 4 || !parse_int(fields[0], user) || !parse_int(fields[1], item) ||
            !parse_double(fields[2], rating) || !parse_int(fields[3], ts) || ts < 0) {
            ++local.malformed_rows;
            continue;
        }
        Interaction e;
        e.user_id = static_cast<int>(user);
        e.item_id = static_cast<int>(item);
        e.rating = rating;
        e.timestamp = ts;
        ds.interactions.push_back(e);
    }
    if (ds.interactions.empty()) throw Error("no valid rows in ratings file: " + path);

    ds.sort_interactions();
    std::unordered_set<int> users, items;
    for (const auto& e : ds.interactions) {
        users.insert(e.user_id);
        items.insert(e.item_id);
    }
    ds.user_count = static_cast<int>(users.size());
    ds.item_count = static_cast<int>(items.size());
    if (stats) *stats = local;
    return ds;
}

void load_items(Dataset& dataset, const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open item metadata file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line, options.delimiter);
        long long id = 0;
        if (fields.size() < 2 || !parse_int(fields[0], id) || fields[1].empty()) continue;
        Item item;
        item.item_id = static_cast<int>(id);
        item.title = fields[1];
        if (fields.size() >= 3) item.description = fields[2];
        dataset.items[item.item_id] = std::move(item);
    }
    for (const auto& e : dataset.interactions) {
        if (dataset.items.find(e.item_id) == dataset.items.end()) {
            Item stub;
            stub.item_id = e.item_id;
            stub.title = "item " + std::to_string(e.item_id);
            dataset.items[e.item_id] = std::move(stub);
        }
    }
}

int binarize(double rating, double threshold) {
    if (!std::isfinite(rating)) throw Error("non-finite rating");
    return rating > threshold ? 1 : 0;
}

void binarize_dataset(Dataset& dataset, double threshold) {
    for (auto& e : dataset.interactions) e.label = binarize(e.rating, threshold);
}

SplitResult temporal_split(const Dataset& dataset, int64_t train_end, int64_t valid_end) {
    if (train_end >= valid_end) throw Error("temporal_split requires train_end < valid_end");
    SplitResult out;
    out.train.items = out.valid.items = out.test.items = dataset.items;
    out.train.user_count = out.valid.user_count = out.test.user_count = dataset.user_count;
    out.train.item_count = out.valid.item_count = out.test.item_count = dataset.item_count;
    for (const auto& e : dataset.interactions) {
        if (e.timestamp <= train_end)
            out.train.interactions.push_back(e);
        else if (e.timestamp <= valid_end)
            out.valid.interactions.push_back(e);
        else
            out.test.interactions.push_back(e);
    }
    return out;
}

FilterResult filter_sparse(const Dataset& dataset, int min_interactions) {
    if (min_interactions < 1) throw Error("min_interactions must be >= 1");

    std::vector<Interaction> kept = dataset.interactions;
    FilterResult out;
    std::unordered_set<int> all_users, all_items;
    for (const auto& e : kept) {
        all_users.insert(e.user_id);
        all_items.insert(e.item_id);
    }

    while (true) {
        std::unordered_map<int, int> user_deg, item_deg;
        for (const auto& e : kept) {
            ++user_deg[e.user_id];
            ++item_deg[e.item_id];
        }
        std::vector<Interaction> next;
        next.reserve(kept.size());
        for (const auto& e : kept) {
            if (user_deg[e.user_id] >= min_interactions && item_deg[e.item_id] >= min_interactions)
                next.push_back(e);
        }
        ++out.rounds;
        if (next.size() == kept.size()) break;
        kept = std::move(next);
        if (kept.empty()) throw Error("filter_sparse removed every interaction");
    }

    std::set<int> users, items;
    for (const auto& e : kept) {
        users.insert(e.user_id);
        items.insert(e.item_id);
    }
    out.user_raw_ids.assign(users.begin(), users.end());
    out.item_raw_ids.assign(items.begin(), items.end());
    std::unordered_map<int, int> user_dense, item_dense;
    for (size_t i = 0; i < out.user_raw_ids.size(); ++i) user_dense[out.user_raw_ids[i]] = static_cast<int>(i);
    for (size_t i = 0; i < out.item_raw_ids.size(); ++i) item_dense[out.item_raw_ids[i]] = static_cast<int>(i);

    out.dataset.interactions.reserve(kept.size());
    for (auto e : kept) {
        e.user_id = user_dense[e.user_id];
        e.item_id = item_dense[e.item_id];
        out.dataset.interactions.push_back(e);
    }
    out.dataset.sort_interactions();
    for (size_t i = 0; i < out.item_raw_ids.size(); ++i) {
        const auto it = dataset.items.find(out.item_raw_ids[i]);
        Item item;
        if (it != dataset.items.end()) item = it->second;
        item.item_id = static_cast<int>(i);
        if (item.title.empty()) item.title = "item " + std::to_string(out.item_raw_ids[i]);
        out.dataset.items[static_cast<int>(i)] = std::move(item);
    }
    out.dataset.user_count = static_cast<int>(out.user_raw_ids.size());
    out.dataset.item_count = static_cast<int>(out.item_raw_ids.size());
    out.removed_users = all_users.size() - users.size();
    out.removed_items = all_items.size() - items.size();
    return out;
}

HistoryWindow build_history_window(const Dataset& dataset, size_t target_index, int max_history) {
    if (target_index >= dataset.interactions.size()) throw Error("target index out of range");
    const Interaction& target = dataset.interactions[target_index];

    HistoryWindow window;
    window.user_id = target.user_id;
    window.target_label = target.label;
    const auto target_item = dataset.items.find(target.item_id);
    if (target_item == dataset.items.end()) throw Error("target item has no metadata");
    window.target = target_item->second;

    // Interactions are sorted by (user, timestamp); walk backwards over the
    // same user's earlier events.
    std::vector<std::pair<Item, int>> rev;
    for (size_t i = target_index; i-- > 0;) {
        const Interaction& e = dataset.interactions[i];
        if (e.user_id != target.user_id) break;
        const auto it = dataset.items.find(e.item_id);
        if (it == dataset.items.end()) continue;
        rev.emplace_back(it->second, e.label);
        if (static_cast<int>(rev.size()) >= max_history) break;
    }
    if (rev.empty()) throw Error("target has no preceding history");
    window.entries.assign(rev.rbegin(), rev.rend());
    return window;
}

}  // namespace recfuse
