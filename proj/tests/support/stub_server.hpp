// Loopback chat-completions stub with a scriptable HTTP status sequence.
#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

namespace testsupport {

class ChatStubServer {
public:
    explicit ChatStubServer(std::vector<int> statuses,
                            std::string content = "Template: stub <*>")
        : statuses_(std::move(statuses)), content_(std::move(content)) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            last_body_ = req.body;
            ++calls_;
            int status = statuses_.empty()
                             ? 200
                             : statuses_[std::min(static_cast<std::size_t>(calls_ - 1),
                                                  statuses_.size() - 1)];
            res.status = status;
            if (status == 200) {
                nlohmann::json reply = {
                    {"choices",
                     nlohmann::json::array({nlohmann::json{
                         {"message", nlohmann::json{{"content", content_}}}}})}};
                res.set_content(reply.dump(), "application/json");
            } else {
                res.set_content("{}", "application/json");
            }
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~ChatStubServer() {
        server_.stop();
        thread_.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
    int calls() const { return calls_; }
    std::string last_body() const { return last_body_; }

private:
    httplib::Server server_;
    std::vector<int> statuses_;
    std::string content_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> calls_{0};
    std::string last_body_;
};

}  // namespace testsupport
