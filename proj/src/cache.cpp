#include "iclog/cache.hpp"

#include "iclog/errors.hpp"

namespace iclog {

namespace {

bool validate_anchored(std::string_view log, const Template& pattern) {
    const auto& segments = pattern.match_segments();
    const std::size_t trailing = pattern.trailing_wildcards();

    if (segments.empty()) {
        // All-wildcard pattern: each wildcard must consume one character.
        return log.size() >= trailing;
    }

    // A last segment not followed by a wildcard is pinned to the log's end.
    std::size_t end_limit = log.size();
    std::size_t greedy_count = segments.size();
    if (trailing == 0) {
        const std::string& last = segments.back().text;
        if (log.size() < last.size()) return false;
        std::size_t last_start = log.size() - last.size();
        if (log.compare(last_start, last.size(), last) != 0) return false;
        end_limit = last_start;
        --greedy_count;
    }

    std::size_t pos = 0;  // end of the previously matched segment
    for (std::size_t i = 0; i < greedy_count; ++i) {
        const auto& seg = segments[i];
        std::size_t min_start = pos + seg.wildcards_before;
        std::size_t found;
        if (i == 0 && seg.wildcards_before == 0) {
            if (log.compare(0, seg.text.size(), seg.text) != 0) return false;
            found = 0;
        } else {
            found = log.find(seg.text, min_start);
            if (found == std::string_view::npos) return false;
        }
        pos = found + seg.text.size();
    }

    if (trailing == 0) {
        // Room for the wildcards between the last greedy segment and the
        // end-anchored one; with a single segment, the anchor is the greedy
        // match itself.
        if (greedy_count == 0) {
            std::size_t lead = segments.back().wildcards_before;
            return lead == 0 ? end_limit == 0 : end_limit >= lead;
        }
        return pos + segments.back().wildcards_before <= end_limit;
    }
    return pos + trailing <= log.size();
}

bool validate_literal(std::string_view log, const Template& pattern) {
    std::size_t pos = 0;
    for (const auto& seg : pattern.match_segments()) {
        std::size_t found = log.find(seg.text, pos);
        if (found == std::string_view::npos) return false;
        pos = found + seg.text.size();
    }
    return true;
}

}  // namespace

bool validate(std::string_view log_norm, const Template& pattern, bool anchored) {
    return anchored ? validate_anchored(log_norm, pattern) : validate_literal(log_norm, pattern);
}

TemplateCache::TemplateCache(CacheConfig config) : config_(config) {}

TemplateCache::Lookup TemplateCache::lookup(std::string_view raw) {
    std::string key = normalize(raw);

    auto it = index_.find(key);
    if (it != index_.end()) {
        entries_.splice(entries_.end(), entries_, it->second);
        ++stats_.lru_hits;
        return {Outcome::LruHit, it->second->second};
    }

    for (const auto& pattern : patterns_) {
        if (validate(key, pattern, config_.anchored_validate)) {
            ++stats_.pattern_hits;
            if (tokenize(raw).token_count <= config_.token_threshold) {
                touch_lru(std::move(key), pattern);
            }
            return {Outcome::PatternHit, pattern};
        }
    }

    ++stats_.misses;
    return {Outcome::Miss, std::nullopt};
}

void TemplateCache::insert(std::string_view raw, const Template& tmpl) {
    // Registered templates go through the same normalization as lookups.
    std::string norm_text = normalize(tmpl.text());
    const Template normalized = (norm_text == tmpl.text()) ? tmpl : Template(std::move(norm_text));

    register_pattern(normalized);
    if (tokenize(raw).token_count <= config_.token_threshold) {
        touch_lru(normalize(raw), normalized);
    }
}

void TemplateCache::register_pattern(const Template& tmpl) {
    if (pattern_texts_.insert(tmpl.text()).second) patterns_.push_back(tmpl);
}

void TemplateCache::touch_lru(std::string key, const Template& tmpl) {
    auto it = index_.find(key);
    if (it != index_.end()) {
        it->second->second = tmpl;
        entries_.splice(entries_.end(), entries_, it->second);
        return;
    }
    if (entries_.size() >= config_.lru_capacity) {
        index_.erase(entries_.front().first);
        entries_.pop_front();
        ++stats_.evictions;
    }
    entries_.emplace_back(std::move(key), tmpl);
    index_.emplace(entries_.back().first, std::prev(entries_.end()));
}

std::vector<std::pair<std::string, std::string>> TemplateCache::lru_entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(entries_.size());
    for (const auto& [key, tmpl] : entries_) out.emplace_back(key, tmpl.text());
    return out;
}

nlohmann::json TemplateCache::to_json() const {
    nlohmann::json snapshot;
    snapshot["config"] = {{"lru_capacity", config_.lru_capacity},
                          {"token_threshold", config_.token_threshold},
                          {"anchored_validate", config_.anchored_validate}};
    nlohmann::json patterns = nlohmann::json::array();
    for (const auto& tmpl : patterns_) patterns.push_back(tmpl.text());
    snapshot["patterns"] = std::move(patterns);
    nlohmann::json lru = nlohmann::json::array();
    for (const auto& [key, tmpl] : entries_) lru.push_back({key, tmpl.text()});
    snapshot["lru"] = std::move(lru);
    snapshot["stats"] = {{"lru_hits", stats_.lru_hits},
                         {"pattern_hits", stats_.pattern_hits},
                         {"misses", stats_.misses},
                         {"evictions", stats_.evictions}};
    return snapshot;
}

TemplateCache TemplateCache::from_json(const nlohmann::json& snapshot) {
    CacheConfig config;
    if (auto it = snapshot.find("config"); it != snapshot.end()) {
        config.lru_capacity = it->value("lru_capacity", config.lru_capacity);
        config.token_threshold = it->value("token_threshold", config.token_threshold);
        config.anchored_validate = it->value("anchored_validate", config.anchored_validate);
    }
    TemplateCache cache(config);
    for (const auto& text : snapshot.value("patterns", nlohmann::json::array())) {
        cache.register_pattern(Template(text.get<std::string>()));
    }
    for (const auto& entry : snapshot.value("lru", nlohmann::json::array())) {
        Template tmpl(entry.at(1).get<std::string>());
        cache.register_pattern(tmpl);  // keep the tier invariant on import
        cache.touch_lru(entry.at(0).get<std::string>(), tmpl);
    }
    if (auto it = snapshot.find("stats"); it != snapshot.end()) {
        cache.stats_.lru_hits = it->value("lru_hits", std::uint64_t{0});
        cache.stats_.pattern_hits = it->value("pattern_hits", std::uint64_t{0});
        cache.stats_.misses = it->value("misses", std::uint64_t{0});
        cache.stats_.evictions = it->value("evictions", std::uint64_t{0});
    }
    return cache;
}

}  // namespace iclog
