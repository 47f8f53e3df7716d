// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pathfuse/agent.hpp"

namespace pathfuse {

struct ScriptEntry {
    /// nullopt matches any kind.
    std::optional<PromptKind> kind;
    /// When set, the prompt must contain this text.
    std::optional<std::string> contains;
    std::string response;
};

/// Deterministic agent replaying canned responses in order. A prompt that
/// does not match the next entry, or a call past the end of the script,
/// throws ScriptMismatch.
class ScriptedAgent final : public AgentGateway {
public:
    explicit ScriptedAgent(std::vector<ScriptEntry> script);

    /// Reads a JSON array of {"kind", "contains"?, "response"} objects, or the
    /// same objects one per line. "kind" may be "*" for any.
    static std::vector<ScriptEntry> load_script(const std::string& path);

    std::string complete(const AgentRequest& request) override;
    bool order_sensitive() const noexcept override { return true; }

    std::size_t consumed() const;
    std::size_t remaining() const;

private:
    mutable std::mutex mutex_;
    std::vector<ScriptEntry> script_;
    std::size_t next_ = 0;
};

}  // namespace pathfuse
