// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/live_agent.hpp"

#include <cstdlib>

#include <httplib.h>

#include "url.hpp"

namespace pathfuse {

namespace chat_protocol {

nlohmann::json build_request(const std::string& model, const std::string& prompt, double temperature) {
    return {
        {"model", model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", temperature},
    };
}

std::string extract_completion(const nlohmann::json& response) {
    try {
        const auto& content = response.at("choices").at(0).at("message").at("content");
        if (content.is_null()) return "";
        return content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw AgentUnavailable(std::string("unexpected completion shape: ") + e.what());
    }
}

}  // namespace chat_protocol

LiveAgent::LiveAgent(std::string endpoint_url, AgentConfig config, std::string api_key_env)
    : config_(std::move(config)) {
    auto url = parse_url(endpoint_url);
    scheme_host_port_ = url.scheme_host_port();
    path_ = url.path;
    if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

std::string LiveAgent::complete(const AgentRequest& request) {
    httplib::Client client(scheme_host_port_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const auto body =
        chat_protocol::build_request(config_.model_name, request.prompt, request.temperature).dump();

    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) throw AgentUnavailable("transport error: " + httplib::to_string(res.error()));
    if (res->status != 200) {
        throw AgentUnavailable("HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw AgentUnavailable(std::string("unparseable completion body: ") + e.what());
    }
    return chat_protocol::extract_completion(doc);
}

}  // namespace pathfuse
