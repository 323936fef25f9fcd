#include "iclog/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "iclog/errors.hpp"

namespace iclog {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string expand_env(const std::string& value) {
    std::string out;
    std::size_t pos = 0;
    while (pos < value.size()) {
        std::size_t dollar = value.find("${", pos);
        if (dollar == std::string::npos) {
            out.append(value, pos, std::string::npos);
            break;
        }
        std::size_t close = value.find('}', dollar + 2);
        if (close == std::string::npos) {
            out.append(value, pos, std::string::npos);
            break;
        }
        out.append(value, pos, dollar - pos);
        std::string name = value.substr(dollar + 2, close - dollar - 2);
        if (const char* env = std::getenv(name.c_str())) out.append(env);
        pos = close + 1;
    }
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_string(std::string_view text) {
    KeyValueConfig out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        std::string line = trim(raw);
        if (!line.empty() && line.front() != '#' && line.front() != ';') {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + " has no '='");
            }
            std::string key = trim(std::string_view(line).substr(0, eq));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
            }
            out.entries_[key] = expand_env(value);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_or(std::string_view key, std::string_view fallback) const {
    auto value = get(key);
    return value ? *value : std::string(fallback);
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
    auto value = get(key);
    if (!value) return fallback;
    try {
        return std::stod(*value);
    } catch (const std::exception&) {
        throw ConfigError("config key " + std::string(key) + " is not a number: " + *value);
    }
}

std::size_t KeyValueConfig::get_size(std::string_view key, std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(key, fallback));
}

std::uint64_t KeyValueConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
    auto value = get(key);
    if (!value) return fallback;
    try {
        return std::stoull(*value);
    } catch (const std::exception&) {
        throw ConfigError("config key " + std::string(key) + " is not an integer: " + *value);
    }
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
    auto value = get(key);
    if (!value) return fallback;
    if (*value == "true" || *value == "1" || *value == "yes" || *value == "on") return true;
    if (*value == "false" || *value == "0" || *value == "no" || *value == "off") return false;
    throw ConfigError("config key " + std::string(key) + " is not a boolean: " + *value);
}

RunConfig load_run_config(const KeyValueConfig& kv) {
    RunConfig rc;

    rc.dataset.name = kv.get_or("dataset.name", "dataset");
    rc.dataset.log_file_path = kv.get_or("dataset.log_file", "");
    rc.dataset.header_pattern = kv.get_or("dataset.header_pattern", "^(?<content>.*)$");
    if (auto truth = kv.get("dataset.ground_truth")) rc.dataset.ground_truth_path = *truth;

    rc.sampler.epsilon = kv.get_double("sampler.epsilon", rc.sampler.epsilon);
    rc.sampler.min_pts = kv.get_size("sampler.min_pts", rc.sampler.min_pts);
    rc.sampler.sample_ratio = kv.get_double("sampler.sample_ratio", rc.sampler.sample_ratio);
    rc.sampler.smoothing_factor =
        kv.get_double("sampler.smoothing_factor", rc.sampler.smoothing_factor);

    rc.cache.lru_capacity = kv.get_size("cache.lru_capacity", rc.cache.lru_capacity);
    rc.cache.token_threshold = kv.get_size("cache.token_threshold", rc.cache.token_threshold);
    rc.cache.anchored_validate = kv.get_bool("cache.anchored_validate", rc.cache.anchored_validate);

    rc.k1 = kv.get_double("selector.k1", rc.k1);
    rc.b = kv.get_double("selector.b", rc.b);
    rc.shots = kv.get_size("selector.shots", rc.shots);
    rc.ascending_order = kv.get_bool("selector.ascending_order", rc.ascending_order);
    rc.instruction = kv.get_or("prompt.instruction", rc.instruction);

    std::string kind = kv.get_or("backend.kind", "oracle");
    if (kind == "oracle") {
        rc.backend.kind = BackendKind::Oracle;
    } else if (kind == "http") {
        rc.backend.kind = BackendKind::HttpChat;
    } else {
        throw ConfigError("backend.kind must be oracle or http, got: " + kind);
    }
    rc.backend.endpoint_url = kv.get_or("backend.endpoint_url", rc.backend.endpoint_url);
    rc.backend.model_name = kv.get_or("backend.model", rc.backend.model_name);
    rc.backend.api_key_env_var = kv.get_or("backend.api_key_env", rc.backend.api_key_env_var);
    rc.backend.max_retries = static_cast<int>(kv.get_size("backend.max_retries", 3));
    rc.backend.timeout = std::chrono::milliseconds(kv.get_u64("backend.timeout_ms", 30000));
    rc.backend.initial_backoff =
        std::chrono::milliseconds(kv.get_u64("backend.initial_backoff_ms", 200));

    rc.max_shot = kv.get_size("emitter.max_shot", rc.max_shot);
    rc.per_shot_count = kv.get_size("emitter.per_shot_count", rc.per_shot_count);

    rc.output_dir = kv.get_or("output_dir", "out");
    rc.seed = kv.get_u64("seed", 0);
    rc.sampler.seed = rc.seed;

    if (rc.sampler.epsilon < 0.0) throw ConfigError("sampler.epsilon must be >= 0");
    if (rc.sampler.min_pts < 1) throw ConfigError("sampler.min_pts must be >= 1");
    if (rc.sampler.sample_ratio <= 0.0 || rc.sampler.sample_ratio > 1.0) {
        throw ConfigError("sampler.sample_ratio must be in (0, 1]");
    }
    if (rc.sampler.smoothing_factor <= 0.0) {
        throw ConfigError("sampler.smoothing_factor must be > 0");
    }
    if (rc.cache.lru_capacity < 1) throw ConfigError("cache.lru_capacity must be >= 1");
    if (rc.cache.token_threshold < 1) throw ConfigError("cache.token_threshold must be >= 1");
    if (rc.k1 <= 0.0) throw ConfigError("selector.k1 must be > 0");
    if (rc.b < 0.0 || rc.b > 1.0) throw ConfigError("selector.b must be in [0, 1]");
    return rc;
}

}  // namespace iclog
