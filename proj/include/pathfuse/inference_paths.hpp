// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathfuse/agent.hpp"
#include "pathfuse/core_model.hpp"

namespace pathfuse {

/// Dataset topic entities as (label, id) pairs in dataset order.
using TopicEntityMap = std::vector<std::pair<std::string, std::string>>;

/// What the agent knows before touching the graph.
struct IpgResult {
    /// Origins of the parsed paths; label-only, so id == label.
    std::vector<EntityRef> topic_entities;
    std::vector<Triple> triples;
    std::vector<ReasoningPath> paths;
    /// The response string, verbatim.
    std::string internal_answer;
    std::size_t triple_count_requested = 0;
    /// False when the call was skipped (n = 0) or produced nothing usable.
    bool ok = false;
    std::vector<std::string> warnings;
};

/// One metered call (none when n == 0) with the inference-paths prompt
/// asking for `n` triples. Malformed or failed completions degrade to an
/// empty result carrying a warning.
IpgResult generate_inference(std::string_view question, AgentSession& agent, std::size_t n);

struct TopicLinking {
    std::vector<EntityRef> entities;
    /// True when ids came from the dataset (or name resolution) rather than bare labels.
    bool has_ids = false;
    std::vector<std::string> warnings;
};

/// Dataset entities win when present; otherwise the IPG labels are returned
/// without ids. Throws NoTopicEntities when both are empty.
TopicLinking link_topic_entities(const IpgResult& ipg, const TopicEntityMap& dataset_entities);

}  // namespace pathfuse
