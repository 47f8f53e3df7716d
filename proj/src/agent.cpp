// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/agent.hpp"

namespace pathfuse {

AgentSession::AgentSession(AgentGateway& gateway, AgentConfig config, TokenCounter counter, Clock clock)
    : gateway_(gateway),
      config_(std::move(config)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      ledger_(std::move(counter)) {}

std::string AgentSession::complete(PromptKind kind, const std::string& prompt) {
    const AgentRequest request{kind, prompt, config_.temperature};
    const auto start = clock_();
    std::string response;
    try {
        response = gateway_.complete(request);
    } catch (const std::exception& e) {
        ledger_.record_call(kind, prompt, "", clock_() - start);
        transcript_.push_back(TranscriptEntry{kind, prompt, "", e.what()});
        throw;
    }
    ledger_.record_call(kind, prompt, response, clock_() - start);
    transcript_.push_back(TranscriptEntry{kind, prompt, response, std::nullopt});
    return response;
}

}  // namespace pathfuse
