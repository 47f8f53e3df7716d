// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pathfuse/errors.hpp"
#include "pathfuse/metering.hpp"
#include "pathfuse/prompt_kind.hpp"

namespace pathfuse {

struct AgentRequest {
    PromptKind kind;
    std::string prompt;
    double temperature = 0.4;
};

/// An LLM behind a single completion call.
class AgentGateway {
public:
    virtual ~AgentGateway() = default;

    /// Raw completion text. Throws AgentUnavailable on transport failure.
    virtual std::string complete(const AgentRequest& request) = 0;

    /// True when call order is part of the agent's semantics (scripted replay),
    /// so callers must not issue requests concurrently.
    virtual bool order_sensitive() const noexcept { return false; }
};

struct AgentConfig {
    std::string model_name = "gpt-3.5-turbo";
    double temperature = 0.4;
    int max_retries_on_malformed = 2;
    std::chrono::milliseconds timeout{60'000};
};

struct TranscriptEntry {
    PromptKind kind;
    std::string prompt;
    std::string response;
    /// Set when the call itself failed; `response` is then empty.
    std::optional<std::string> error;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;

/// Per-question view of a gateway. Every completion is timed, metered in the
/// ledger and appended to the transcript exactly once, failed calls included.
class AgentSession {
public:
    AgentSession(AgentGateway& gateway, AgentConfig config, TokenCounter counter = approx_token_count,
                 Clock clock = {});

    /// One metered completion. Rethrows gateway errors after recording them.
    std::string complete(PromptKind kind, const std::string& prompt);

    /// Completes and parses, re-issuing the same prompt while `parse` throws
    /// MalformedSelection, up to max_retries_on_malformed extra calls.
    /// Returns nullopt once retries are exhausted.
    template <class Parse>
    auto complete_parsed(PromptKind kind, const std::string& prompt, Parse&& parse)
        -> std::optional<decltype(parse(std::string{}))> {
        const int attempts = 1 + std::max(0, config_.max_retries_on_malformed);
        for (int i = 0; i < attempts; ++i) {
            auto text = complete(kind, prompt);
            try {
                return parse(text);
            } catch (const MalformedSelection&) {
            }
        }
        return std::nullopt;
    }

    const AgentConfig& config() const noexcept { return config_; }
    const CostLedger& ledger() const noexcept { return ledger_; }
    const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }

    CostLedger take_ledger() { return std::move(ledger_); }
    std::vector<TranscriptEntry> take_transcript() { return std::move(transcript_); }

private:
    AgentGateway& gateway_;
    AgentConfig config_;
    Clock clock_;
    CostLedger ledger_;
    std::vector<TranscriptEntry> transcript_;
};

}  // namespace pathfuse
