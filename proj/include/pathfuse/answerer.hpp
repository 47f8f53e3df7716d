// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/agent.hpp"
#include "pathfuse/explorer.hpp"
#include "pathfuse/inference_paths.hpp"
#include "pathfuse/kg_backend.hpp"
#include "pathfuse/metering.hpp"
#include "pathfuse/response_parser.hpp"

namespace pathfuse {

struct AnswerConfig {
    /// Exploration rounds D. 0 disables exploration (answers from inference paths).
    std::size_t max_depth = 3;
    /// Triples requested from the agent. 0 skips inference-path generation.
    std::size_t triple_count = 15;
    ExplorerConfig explorer;
    AgentConfig agent;
    /// Look IPG topic labels up in the backend when the caller supplies no ids.
    bool resolve_topic_by_name = false;
    TokenCounter token_counter = approx_token_count;
    /// Time source for the ledger; steady_clock when empty.
    Clock clock;
};

enum class AnswerSource { Subgraph, InternalFallback };

std::string_view to_string(AnswerSource s) noexcept;

struct AnswerOutcome {
    std::string answer_text;
    /// Round at which the evaluation gate fired.
    std::optional<std::size_t> answerable_round;
    AnswerSource source = AnswerSource::InternalFallback;
    /// The gate never fired and inference paths were skipped, so the last
    /// evaluation response stands in as the answer.
    bool best_effort = false;
    std::size_t rounds_executed = 0;
    std::vector<Subgraph> final_subgraphs;
    std::vector<TranscriptEntry> transcript;
    CostLedger ledger;
    IpgResult ipg;
    std::vector<RoundDelta> history;
    std::vector<std::string> warnings;
    std::vector<std::string> errors;
    bool backend_unavailable = false;
};

/// One metered evaluation over all subgraphs jointly. Exhausted retries or
/// an unavailable agent read as not answerable.
Evaluation evaluate(std::span<const Subgraph> subgraphs, std::string_view question, AgentSession& agent);

/// Inference paths, then up to max_depth rounds of exploration each followed
/// by one evaluation, stopping when the gate fires or every path is frozen.
/// Without a fired gate the inference-path response is the answer.
/// Throws NoTopicEntities when exploration is enabled and no topic entity is known.
AnswerOutcome answer_question(std::string_view question, const TopicEntityMap& topic_entities,
                              AgentGateway& agent, const KnowledgeBackend& backend,
                              const AnswerConfig& config);

}  // namespace pathfuse
