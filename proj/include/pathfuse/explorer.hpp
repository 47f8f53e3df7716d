// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/agent.hpp"
#include "pathfuse/core_model.hpp"
#include "pathfuse/kg_backend.hpp"

namespace pathfuse {

struct ExplorerConfig {
    std::size_t relation_width = 7;
    std::size_t entity_width = 7;
    /// Cap on live paths per subgraph after an update.
    std::size_t max_width = 7;
};

/// A path that may still grow, and the endpoint it grows from.
struct LivePath {
    std::size_t path_index;
    EntityRef frontier;
    /// The frontier sits at the path's head, so extensions prepend.
    bool path_is_head = false;
};

struct SubgraphState {
    Subgraph subgraph;
    std::vector<LivePath> live;  // empty once every path is frozen
};

struct RelationCandidate {
    RelationRef relation;
    /// The frontier entity is the head of the matched pattern (frontier, r, ?).
    bool is_head;

    friend bool operator==(const RelationCandidate&, const RelationCandidate&) = default;
};

struct EntityCandidate {
    EntityRef entity;
    RelationRef via;
    bool is_head;
    /// Frontier entity the query started from.
    EntityRef from;

    friend bool operator==(const EntityCandidate&, const EntityCandidate&) = default;
};

/// Paths added to each subgraph in one round.
struct RoundDelta {
    std::size_t round;
    std::vector<std::vector<ReasoningPath>> added;
};

struct ExplorationState {
    std::vector<SubgraphState> subgraphs;
    std::size_t round = 0;
    std::size_t max_depth = 3;
    std::size_t max_width = 7;
    std::vector<RoundDelta> history;
    /// Per-subgraph failures recorded while exploring; the subgraph is frozen.
    std::vector<std::string> errors;
    bool backend_unavailable = false;

    /// One zero-hop path per topic entity, each live at its topic.
    static ExplorationState initial(std::span<const EntityRef> topics, std::size_t max_depth,
                                    std::size_t max_width);

    bool any_live() const noexcept;
    std::vector<Subgraph> snapshot() const;
};

/// Everything an exploration step reads besides the state itself.
struct ExploreContext {
    std::string_view question;
    std::span<const ReasoningPath> ipg_paths;
    AgentSession& agent;
    const KnowledgeBackend& backend;
    ExplorerConfig config;
};

/// Distinct frontier entities of subgraph i, in live-path order.
std::vector<EntityRef> frontier_entities(const ExplorationState& state, std::size_t i);

/// Head and tail relations of every frontier entity, direction attached.
std::vector<RelationCandidate> relation_candidates(const ExplorationState& state, std::size_t i,
                                                   const KnowledgeBackend& backend);

/// One agent call choosing among the candidates (none when there are no candidates).
std::vector<RelationCandidate> explore_relations(const ExplorationState& state, std::size_t i,
                                                 ExploreContext& ctx);

/// Queries (e, r, ?) or (?, r, e) for every frontier entity and selected
/// relation, then one agent call choosing among the resulting entities.
/// Each selection remembers the frontier entity and relation it came from.
std::vector<EntityCandidate> explore_entities(const ExplorationState& state, std::size_t i,
                                              std::span<const RelationCandidate> selected,
                                              ExploreContext& ctx);

/// Extends `path` by one step:
///   append  (path_is_head = false): is_head ? path + [->, r, ->, e] : path + [<-, r, <-, e]
///   prepend (path_is_head = true):  is_head ? [e, <-, r, <-] + path : [e, ->, r, ->] + path
ReasoningPath update_path(const ReasoningPath& path, bool path_is_head, bool is_head,
                          const RelationRef& r, const EntityRef& e);

/// Extends each live path of subgraph i with the selections produced from its
/// frontier, cloning the path when several selections share it. Paths with no
/// selection are frozen. Live paths are capped at state.max_width in
/// selection order. Does not advance the round.
ExplorationState update_subgraph(ExplorationState state, std::size_t i,
                                 std::span<const EntityCandidate> selections,
                                 std::vector<ReasoningPath>* added = nullptr);

/// Relation exploration, entity exploration and update for every subgraph
/// with a live frontier, then round + 1. Backend and agent failures freeze
/// the affected subgraph and are recorded in state.errors. A state with no
/// live path comes back unchanged.
ExplorationState run_round(ExplorationState state, ExploreContext& ctx);

}  // namespace pathfuse
