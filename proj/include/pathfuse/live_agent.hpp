// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "pathfuse/agent.hpp"

namespace pathfuse {

/// Chat-completion wire format. The only place that knows field names.
namespace chat_protocol {

/// {"model": ..., "messages": [{"role": "user", "content": prompt}], "temperature": ...}
nlohmann::json build_request(const std::string& model, const std::string& prompt, double temperature);

/// choices[0].message.content. Throws AgentUnavailable when absent.
std::string extract_completion(const nlohmann::json& response);

}  // namespace chat_protocol

/// HTTP chat-completion client. Each call is an independent request, so the
/// agent is safe to share between threads.
class LiveAgent final : public AgentGateway {
public:
    /// `endpoint_url` is the full completion URL, e.g.
    /// "https://api.openai.com/v1/chat/completions". The bearer token comes
    /// from the environment variable `api_key_env` (unset means no header).
    LiveAgent(std::string endpoint_url, AgentConfig config, std::string api_key_env = "PATHFUSE_API_KEY");

    std::string complete(const AgentRequest& request) override;

private:
    std::string scheme_host_port_;
    std::string path_;
    AgentConfig config_;
    std::string api_key_;
};

}  // namespace pathfuse
