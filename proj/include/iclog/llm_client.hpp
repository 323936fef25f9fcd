#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iclog/core.hpp"

namespace iclog {

inline constexpr std::string_view kDefaultInstruction =
    "Abstract the variables of the log and output the static template, "
    "marking each variable as <*>.";

// Rendered in-context prompt: instruction, demonstration pairs in order,
// then the query log with an open Template: slot.
struct PromptSpec {
    std::string instruction;
    std::vector<std::pair<std::string, std::string>> demonstrations;  // (log, template)
    std::string query;
    std::size_t shot_count = 0;

    // Byte-stable textual layout of the prompt.
    std::string render() const;
};

PromptSpec build_prompt(std::vector<std::pair<std::string, std::string>> demos,
                        std::string query, std::string instruction = std::string(kDefaultInstruction));

enum class BackendKind { HttpChat, Oracle };

struct BackendConfig {
    BackendKind kind = BackendKind::Oracle;
    std::string endpoint_url = "http://127.0.0.1:8080";  // base URL, no path
    std::string model_name = "local-model";
    std::string api_key_env_var = "ICLOG_API_KEY";
    double temperature = 0.0;  // deterministic decoding
    int max_retries = 3;
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds initial_backoff{200};
};

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    // Returns the raw response text. Throws NetworkError / AuthError /
    // OracleMiss depending on the backend.
    virtual std::string query(const PromptSpec& prompt) = 0;
};

// Answers from a ground-truth table keyed by normalized log content. Used
// for offline runs and tests; isolates pipeline behavior from model quality.
class OracleBackend final : public LlmBackend {
public:
    explicit OracleBackend(std::unordered_map<std::string, std::string> answers)
        : answers_(std::move(answers)) {}

    std::string query(const PromptSpec& prompt) override;

private:
    std::unordered_map<std::string, std::string> answers_;
};

// OpenAI-compatible chat-completions client with exponential backoff on
// transient failures. 401/403 fail fast.
class HttpChatBackend final : public LlmBackend {
public:
    explicit HttpChatBackend(BackendConfig config) : config_(std::move(config)) {}

    std::string query(const PromptSpec& prompt) override;

private:
    BackendConfig config_;
};

std::unique_ptr<LlmBackend> make_backend(const BackendConfig& config,
                                         std::unordered_map<std::string, std::string> oracle_answers = {});

// Strips code fences and quotes, pulls the text after the last "Template:"
// marker (or the first non-empty line), and normalizes it. Throws
// UnparseableResponse when nothing usable remains.
Template extract_template(std::string_view response);

}  // namespace iclog
