#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "iclog/core.hpp"

namespace iclog {

struct CacheConfig {
    std::size_t lru_capacity = 4096;
    std::size_t token_threshold = 128;  // max tokens for LRU-eligible logs
    // When false, validate runs the unanchored literal predicate: segments
    // anywhere in order, wildcards free to match nothing.
    bool anchored_validate = true;
};

struct CacheStats {
    std::uint64_t lru_hits = 0;
    std::uint64_t pattern_hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t evictions = 0;
};

// True iff the pattern's constant segments occur in log_norm in order at
// strictly increasing positions, found greedily left to right. Anchored mode
// additionally pins the first segment to position 0 (no leading wildcard),
// the last segment to the end (no trailing wildcard), and makes every
// wildcard consume at least one character.
bool validate(std::string_view log_norm, const Template& pattern, bool anchored = true);

// Two-tier pre-query cache: exact-match LRU over normalized logs plus an
// insertion-ordered pattern list scanned with validate. Not internally
// synchronized; callers sharing a cache across threads must serialize
// every operation (lookups mutate recency).
class TemplateCache {
public:
    explicit TemplateCache(CacheConfig config = {});

    enum class Outcome { LruHit, PatternHit, Miss };

    struct Lookup {
        Outcome outcome = Outcome::Miss;
        std::optional<Template> tmpl;
    };

    // Stage 1: exact match on normalize(raw), refreshing recency. Stage 2:
    // first pattern accepted by validate wins and is promoted into the LRU.
    Lookup lookup(std::string_view raw);

    // Registers the template in the pattern tier (text-deduplicated) and,
    // when the log is at most token_threshold tokens, as the most recently
    // used LRU entry. Template text is normalized before registration.
    void insert(std::string_view raw, const Template& tmpl);

    const CacheStats& stats() const { return stats_; }
    const CacheConfig& config() const { return config_; }
    std::size_t lru_size() const { return entries_.size(); }
    std::size_t pattern_count() const { return patterns_.size(); }
    const std::vector<Template>& patterns() const { return patterns_; }

    // LRU contents oldest-first, for inspection and snapshots.
    std::vector<std::pair<std::string, std::string>> lru_entries() const;

    nlohmann::json to_json() const;
    static TemplateCache from_json(const nlohmann::json& snapshot);

private:
    void register_pattern(const Template& tmpl);
    void touch_lru(std::string key, const Template& tmpl);

    CacheConfig config_;
    // LRU order: front = least recently used, back = most recently used.
    std::list<std::pair<std::string, Template>> entries_;
    std::unordered_map<std::string, std::list<std::pair<std::string, Template>>::iterator> index_;
    std::vector<Template> patterns_;
    std::unordered_set<std::string> pattern_texts_;
    CacheStats stats_;
};

}  // namespace iclog
