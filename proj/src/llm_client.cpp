#include "iclog/llm_client.hpp"

#include <cctype>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "iclog/errors.hpp"

namespace iclog {

std::string PromptSpec::render() const {
    std::string out = instruction;
    out.push_back('\n');
    for (const auto& [log, tmpl] : demonstrations) {
        out += "Log: " + log + "\nTemplate: " + tmpl + "\n";
    }
    out += "Log: " + query + "\nTemplate:";
    return out;
}

PromptSpec build_prompt(std::vector<std::pair<std::string, std::string>> demos,
                        std::string query, std::string instruction) {
    PromptSpec spec;
    spec.instruction = std::move(instruction);
    spec.shot_count = demos.size();
    spec.demonstrations = std::move(demos);
    spec.query = std::move(query);
    return spec;
}

std::string OracleBackend::query(const PromptSpec& prompt) {
    auto it = answers_.find(normalize(prompt.query));
    if (it == answers_.end()) {
        throw OracleMiss("no ground-truth answer for query log: " + prompt.query);
    }
    return it->second;
}

std::string HttpChatBackend::query(const PromptSpec& prompt) {
    nlohmann::json body = {
        {"model", config_.model_name},
        {"messages", nlohmann::json::array({nlohmann::json{
            {"role", "user"}, {"content", prompt.render()}}})},
        {"temperature", config_.temperature},
    };
    const std::string payload = body.dump();

    httplib::Client client(config_.endpoint_url);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    httplib::Headers headers;
    if (!config_.api_key_env_var.empty()) {
        if (const char* key = std::getenv(config_.api_key_env_var.c_str())) {
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay = config_.initial_backoff * (1LL << (attempt - 1));
            std::this_thread::sleep_for(delay);
        }
        auto res = client.Post("/v1/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("chat endpoint rejected credentials (HTTP " +
                            std::to_string(res->status) + ")");
        }
        if (res->status >= 500 || res->status == 408 || res->status == 429) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw NetworkError("chat endpoint returned HTTP " + std::to_string(res->status));
        }
        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw NetworkError(std::string("malformed chat completion response: ") + e.what());
        }
    }
    throw NetworkError("chat endpoint unavailable after " +
                       std::to_string(config_.max_retries + 1) + " attempts; last: " + last_error);
}

std::unique_ptr<LlmBackend> make_backend(const BackendConfig& config,
                                         std::unordered_map<std::string, std::string> oracle_answers) {
    if (config.kind == BackendKind::Oracle) {
        return std::make_unique<OracleBackend>(std::move(oracle_answers));
    }
    return std::make_unique<HttpChatBackend>(config);
}

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Drops ``` fence lines wherever they appear.
std::string strip_code_fences(std::string_view text) {
    std::string out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        if (trim_view(line).substr(0, 3) != "```") {
            out.append(line);
            out.push_back('\n');
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

std::string_view strip_quotes(std::string_view s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '`' && s.back() == '`'))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

}  // namespace

Template extract_template(std::string_view response) {
    std::string defenced = strip_code_fences(response);
    std::string_view text = trim_view(defenced);

    static constexpr std::string_view kMarker = "Template:";
    std::size_t marker = text.rfind(kMarker);
    std::string_view region = text;
    if (marker != std::string_view::npos) {
        region = text.substr(marker + kMarker.size());
    }

    // First non-empty line of the region: covers both "Template: x" and
    // "Template:\nx" layouts.
    std::string_view candidate;
    std::size_t pos = 0;
    while (pos <= region.size()) {
        std::size_t eol = region.find('\n', pos);
        std::string_view line =
            region.substr(pos, eol == std::string_view::npos ? region.size() - pos : eol - pos);
        if (!trim_view(line).empty()) {
            candidate = line;
            break;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }

    std::string result = normalize(strip_quotes(trim_view(candidate)));
    bool has_alnum = false;
    for (char c : result) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            has_alnum = true;
            break;
        }
    }
    if (!has_alnum) throw UnparseableResponse("no usable template in LLM response");
    return Template(std::move(result));
}

}  // namespace iclog
