#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "iclog/errors.hpp"
#include "iclog/llm_client.hpp"
#include "support/stub_server.hpp"

using namespace iclog;

TEST_CASE("build_prompt lays out demonstrations then the query") {
    PromptSpec zero = build_prompt({}, "session closed for user cyrus");
    CHECK(zero.shot_count == 0);
    CHECK(zero.render() == std::string(kDefaultInstruction) +
                               "\nLog: session closed for user cyrus\nTemplate:");

    PromptSpec one = build_prompt({{"session closed for user cyrus",
                                    "session closed for user <*>"}},
                                  "session closed for user root");
    std::string text = one.render();
    CHECK(text.find("Log: session closed for user cyrus\nTemplate: session closed for user <*>\n") !=
          std::string::npos);
    CHECK(text.ends_with("Log: session closed for user root\nTemplate:"));

    // Demonstration order is preserved verbatim.
    PromptSpec many = build_prompt({{"a 1", "a <*>"}, {"b 2", "b <*>"}, {"c 3", "c <*>"}}, "d 4");
    std::string rendered = many.render();
    CHECK(rendered.find("a 1") < rendered.find("b 2"));
    CHECK(rendered.find("b 2") < rendered.find("c 3"));
    CHECK(rendered.find("c 3") < rendered.find("d 4"));
}

TEST_CASE("build_prompt is byte stable") {
    auto demos = std::vector<std::pair<std::string, std::string>>{{"x 1", "x <*>"}};
    CHECK(build_prompt(demos, "y 2").render() == build_prompt(demos, "y 2").render());
    CHECK(build_prompt(demos, "y 2").render() != build_prompt(demos, "y 3").render());
    CHECK(build_prompt(demos, "y 2").render() != build_prompt({}, "y 2").render());
}

TEST_CASE("oracle backend answers from the table") {
    std::unordered_map<std::string, std::string> answers{
        {"session closed for user cyrus", "session closed for user <*>"}};
    OracleBackend backend(answers);
    PromptSpec prompt = build_prompt({}, "session closed for user cyrus");
    CHECK(backend.query(prompt) == "session closed for user <*>");

    // Lookup is keyed on normalized content.
    PromptSpec jitter = build_prompt({}, "session  closed for user   cyrus");
    CHECK(backend.query(jitter) == "session closed for user <*>");

    PromptSpec missing = build_prompt({}, "unknown line");
    CHECK_THROWS_AS(backend.query(missing), OracleMiss);
}

TEST_CASE("make_backend picks the configured implementation") {
    BackendConfig oracle_config;
    oracle_config.kind = BackendKind::Oracle;
    auto oracle = make_backend(oracle_config, {{"a 1", "a <*>"}});
    CHECK(oracle->query(build_prompt({}, "a 1")) == "a <*>");

    BackendConfig http_cfg;
    http_cfg.kind = BackendKind::HttpChat;
    auto http = make_backend(http_cfg);
    CHECK(dynamic_cast<HttpChatBackend*>(http.get()) != nullptr);
}

TEST_CASE("extract_template handles markers, fences and quotes") {
    CHECK(extract_template("Template: session closed for user <*>").text() ==
          "session closed for user <*>");
    CHECK(extract_template("```\nsession closed for user <*>\n```").text() ==
          "session closed for user <*>");
    CHECK(extract_template("\"session closed for user <*>\"").text() ==
          "session closed for user <*>");
    CHECK(extract_template("Log: x\nTemplate: a <*>\nLog: y\nTemplate: b <*>").text() == "b <*>");
    CHECK(extract_template("Template:\nsession closed for user <*>").text() ==
          "session closed for user <*>");
    CHECK(extract_template("  padded   text  ").text() == "padded text");

    CHECK_THROWS_AS(extract_template(""), UnparseableResponse);
    CHECK_THROWS_AS(extract_template("\n\n"), UnparseableResponse);
    CHECK_THROWS_AS(extract_template("<*> <*>"), UnparseableResponse);  // no alphanumerics
}

namespace {

using testsupport::ChatStubServer;

BackendConfig http_config(const ChatStubServer& stub, int max_retries = 3) {
    BackendConfig config;
    config.kind = BackendKind::HttpChat;
    config.endpoint_url = stub.url();
    config.model_name = "test-model";
    config.max_retries = max_retries;
    config.initial_backoff = std::chrono::milliseconds(1);
    config.timeout = std::chrono::milliseconds(2000);
    return config;
}

}  // namespace

TEST_CASE("http backend retries transient failures then succeeds") {
    ChatStubServer stub({503, 503, 200});
    HttpChatBackend backend(http_config(stub, 3));
    PromptSpec prompt = build_prompt({}, "some log line");
    CHECK(backend.query(prompt) == "Template: stub <*>");
    CHECK(stub.calls() == 3);

    nlohmann::json body = nlohmann::json::parse(stub.last_body());
    CHECK(body["model"] == "test-model");
    CHECK(body["temperature"] == 0.0);
    REQUIRE(body["messages"].is_array());
    CHECK(body["messages"][0]["role"] == "user");
    CHECK(body["messages"][0]["content"].get<std::string>().find("some log line") !=
          std::string::npos);
}

TEST_CASE("http backend fails fast on auth errors") {
    ChatStubServer stub({401});
    HttpChatBackend backend(http_config(stub, 5));
    PromptSpec prompt = build_prompt({}, "x");
    CHECK_THROWS_AS(backend.query(prompt), AuthError);
    CHECK(stub.calls() == 1);
}

TEST_CASE("http backend exhausts retries on persistent 5xx") {
    ChatStubServer stub({500, 500, 500, 500, 500, 500});
    HttpChatBackend backend(http_config(stub, 2));
    PromptSpec prompt = build_prompt({}, "x");
    CHECK_THROWS_AS(backend.query(prompt), NetworkError);
    CHECK(stub.calls() == 3);  // initial try plus two retries
}

TEST_CASE("recorded-response queries are reproducible") {
    ChatStubServer stub({200});
    HttpChatBackend backend(http_config(stub));
    PromptSpec prompt = build_prompt({{"a 1", "a <*>"}}, "a 2");
    std::string first = backend.query(prompt);
    std::string second = backend.query(prompt);
    CHECK(first == second);
}
