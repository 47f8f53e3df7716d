// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/explorer.hpp"

#include <algorithm>
#include <optional>

#include <spdlog/spdlog.h>

#include "pathfuse/prompts.hpp"
#include "pathfuse/response_parser.hpp"

namespace pathfuse {

namespace {

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

ExplorationState ExplorationState::initial(std::span<const EntityRef> topics, std::size_t max_depth,
                                           std::size_t max_width) {
    ExplorationState s;
    s.max_depth = max_depth;
    s.max_width = max_width;
    for (const auto& t : topics) {
        s.subgraphs.push_back(SubgraphState{Subgraph(t, {ReasoningPath(t)}), {LivePath{0, t, false}}});
    }
    return s;
}

bool ExplorationState::any_live() const noexcept {
    return std::any_of(subgraphs.begin(), subgraphs.end(),
                       [](const SubgraphState& s) { return !s.live.empty(); });
}

std::vector<Subgraph> ExplorationState::snapshot() const {
    std::vector<Subgraph> out;
    out.reserve(subgraphs.size());
    for (const auto& s : subgraphs) out.push_back(s.subgraph);
    return out;
}

std::vector<EntityRef> frontier_entities(const ExplorationState& state, std::size_t i) {
    std::vector<EntityRef> out;
    for (const auto& lp : state.subgraphs.at(i).live) push_unique(out, lp.frontier);
    return out;
}

std::vector<RelationCandidate> relation_candidates(const ExplorationState& state, std::size_t i,
                                                   const KnowledgeBackend& backend) {
    std::vector<RelationCandidate> out;
    for (const auto& f : frontier_entities(state, i)) {
        for (auto& r : backend.head_relations(f)) push_unique(out, RelationCandidate{std::move(r), true});
        for (auto& r : backend.tail_relations(f)) push_unique(out, RelationCandidate{std::move(r), false});
    }
    return out;
}

std::vector<RelationCandidate> explore_relations(const ExplorationState& state, std::size_t i,
                                                 ExploreContext& ctx) {
    if (state.subgraphs.at(i).live.empty()) return {};
    const auto candidates = relation_candidates(state, i, ctx.backend);
    if (candidates.empty()) return {};

    std::vector<RelationRef> distinct;
    for (const auto& c : candidates) push_unique(distinct, c.relation);
    std::vector<std::string> names;
    for (const auto& r : distinct) names.push_back(r.name());

    const auto prompt = render_prompt(PromptKind::RelationExploration,
                                      {{"question", std::string(ctx.question)},
                                       {"topicEntity", state.subgraphs[i].subgraph.topic().display()},
                                       {"knowpath_str", format_paths(ctx.ipg_paths)},
                                       {"relationList", format_name_list(names)}});
    const auto width = ctx.config.relation_width;
    auto picked = ctx.agent.complete_parsed(
        PromptKind::RelationExploration, prompt,
        [&](const std::string& text) { return parse_relation_selection(text, distinct, width); });
    if (!picked) return {};

    std::vector<RelationCandidate> out;
    for (const auto& r : *picked) {
        for (const auto& c : candidates) {
            if (c.relation == r) out.push_back(c);
        }
    }
    return out;
}

std::vector<EntityCandidate> explore_entities(const ExplorationState& state, std::size_t i,
                                              std::span<const RelationCandidate> selected,
                                              ExploreContext& ctx) {
    if (selected.empty()) return {};
    std::vector<EntityCandidate> candidates;
    for (const auto& f : frontier_entities(state, i)) {
        for (const auto& rc : selected) {
            auto found = rc.is_head ? ctx.backend.tail_entities(f, rc.relation)
                                    : ctx.backend.head_entities(f, rc.relation);
            for (const auto& e : found) {
                push_unique(candidates, EntityCandidate{ctx.backend.resolve_label(e), rc.relation, rc.is_head, f});
            }
        }
    }
    if (candidates.empty()) return {};

    std::vector<EntityRef> distinct;
    std::vector<std::string> entity_names;
    for (const auto& c : candidates) {
        push_unique(distinct, c.entity);
        push_unique(entity_names, c.entity.display());
    }
    std::vector<std::string> relation_names;
    for (const auto& rc : selected) push_unique(relation_names, rc.relation.name());

    const auto prompt = render_prompt(PromptKind::EntityExploration,
                                      {{"question", std::string(ctx.question)},
                                       {"topicEntity", state.subgraphs[i].subgraph.topic().display()},
                                       {"knowpath_str", format_paths(ctx.ipg_paths)},
                                       {"relationList", format_name_list(relation_names)},
                                       {"entityList", format_name_list(entity_names)}});
    const auto width = ctx.config.entity_width;
    auto picked = ctx.agent.complete_parsed(
        PromptKind::EntityExploration, prompt,
        [&](const std::string& text) { return parse_entity_selection(text, distinct, width); });
    if (!picked) return {};

    std::vector<EntityCandidate> out;
    for (const auto& e : *picked) {
        for (const auto& c : candidates) {
            if (c.entity == e) out.push_back(c);
        }
    }
    return out;
}

ReasoningPath update_path(const ReasoningPath& path, bool path_is_head, bool is_head,
                          const RelationRef& r, const EntityRef& e) {
    if (!path_is_head) {
        const auto dir = is_head ? Direction::Forward : Direction::Backward;
        return path.appended(PathStep{dir, r, e});
    }
    const auto dir = is_head ? Direction::Backward : Direction::Forward;
    return path.prepended(e, dir, r);
}

ExplorationState update_subgraph(ExplorationState state, std::size_t i,
                                 std::span<const EntityCandidate> selections,
                                 std::vector<ReasoningPath>* added) {
    auto& sg = state.subgraphs.at(i);
    const auto& old_paths = sg.subgraph.paths();

    // Extensions per live path, in selection order, capped at max_width.
    std::vector<std::vector<std::pair<ReasoningPath, EntityRef>>> ext(sg.live.size());
    std::size_t live_count = 0;
    for (const auto& sel : selections) {
        for (std::size_t k = 0; k < sg.live.size(); ++k) {
            const auto& lp = sg.live[k];
            if (!(lp.frontier == sel.from)) continue;
            if (live_count >= state.max_width) break;
            ext[k].emplace_back(update_path(old_paths.at(lp.path_index), lp.path_is_head, sel.is_head,
                                            sel.via, sel.entity),
                                sel.entity);
            ++live_count;
        }
    }

    std::vector<std::optional<std::size_t>> live_slot(old_paths.size());
    for (std::size_t k = 0; k < sg.live.size(); ++k) {
        if (!ext[k].empty()) live_slot[sg.live[k].path_index] = k;
    }

    std::vector<ReasoningPath> paths;
    std::vector<LivePath> live;
    for (std::size_t idx = 0; idx < old_paths.size(); ++idx) {
        if (!live_slot[idx]) {
            push_unique(paths, old_paths[idx]);
            continue;
        }
        const auto k = *live_slot[idx];
        bool extended = false;
        for (auto& [path, frontier] : ext[k]) {
            if (std::find(paths.begin(), paths.end(), path) != paths.end()) continue;
            if (added) added->push_back(path);
            live.push_back(LivePath{paths.size(), frontier, sg.live[k].path_is_head});
            paths.push_back(std::move(path));
            extended = true;
        }
        if (!extended) push_unique(paths, old_paths[idx]);
    }
    sg.subgraph = Subgraph(sg.subgraph.topic(), std::move(paths));
    sg.live = std::move(live);
    return state;
}

ExplorationState run_round(ExplorationState state, ExploreContext& ctx) {
    if (!state.any_live()) return state;
    RoundDelta delta{state.round + 1, std::vector<std::vector<ReasoningPath>>(state.subgraphs.size())};
    for (std::size_t i = 0; i < state.subgraphs.size(); ++i) {
        if (state.subgraphs[i].live.empty()) continue;
        const auto topic = state.subgraphs[i].subgraph.topic().id();
        try {
            const auto relations = explore_relations(state, i, ctx);
            const auto entities = explore_entities(state, i, relations, ctx);
            state = update_subgraph(std::move(state), i, entities, &delta.added[i]);
        } catch (const BackendUnavailable& e) {
            state.backend_unavailable = true;
            state.errors.push_back("subgraph " + topic + ": " + e.what());
            state.subgraphs[i].live.clear();
        } catch (const QueryRejected& e) {
            state.errors.push_back("subgraph " + topic + ": " + e.what());
            state.subgraphs[i].live.clear();
        } catch (const AgentUnavailable& e) {
            state.errors.push_back("subgraph " + topic + ": " + e.what());
            state.subgraphs[i].live.clear();
        }
    }
    ++state.round;
    state.history.push_back(std::move(delta));
    return state;
}

}  // namespace pathfuse
