#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "iclog/cache.hpp"
#include "iclog/llm_client.hpp"
#include "iclog/preprocess.hpp"
#include "iclog/sampler.hpp"

namespace iclog {

// Flat dotted-key configuration: one `section.key = value` per line, full-line
// # comments, ${ENV_VAR} references expanded while parsing.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::filesystem::path& path);  // throws IoError
    static KeyValueConfig parse_string(std::string_view text);            // throws ConfigError

    std::optional<std::string> get(std::string_view key) const;
    std::string get_or(std::string_view key, std::string_view fallback) const;
    double get_double(std::string_view key, double fallback) const;
    std::size_t get_size(std::string_view key, std::size_t fallback) const;
    std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

// Everything one CLI invocation needs.
struct RunConfig {
    DatasetConfig dataset;
    SamplerConfig sampler;
    CacheConfig cache;
    double k1 = 1.2;
    double b = 0.75;
    std::size_t shots = 5;
    bool ascending_order = true;
    std::string instruction = std::string(kDefaultInstruction);
    BackendConfig backend;
    std::size_t max_shot = 5;
    std::size_t per_shot_count = 0;  // 0: one example per meta-set entry
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;
};

// Builds a RunConfig from parsed keys; unspecified keys keep their defaults.
// Throws ConfigError on unusable values.
RunConfig load_run_config(const KeyValueConfig& kv);

}  // namespace iclog
