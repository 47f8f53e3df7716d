// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/answerer.hpp"

#include <spdlog/spdlog.h>

#include "pathfuse/prompts.hpp"

namespace pathfuse {

std::string_view to_string(AnswerSource s) noexcept {
    return s == AnswerSource::Subgraph ? "Subgraph" : "InternalFallback";
}

Evaluation evaluate(std::span<const Subgraph> subgraphs, std::string_view question, AgentSession& agent) {
    std::vector<ReasoningPath> paths;
    for (const auto& g : subgraphs) paths.insert(paths.end(), g.paths().begin(), g.paths().end());
    const auto prompt = render_prompt(PromptKind::Evaluation,
                                      {{"subgraph", format_paths(paths, ArrowStyle::Ascii)},
                                       {"question", std::string(question)}});
    try {
        auto parsed = agent.complete_parsed(PromptKind::Evaluation, prompt,
                                            [](const std::string& text) { return parse_evaluation(text); });
        return parsed.value_or(Evaluation{false, ""});
    } catch (const AgentUnavailable& e) {
        spdlog::warn("evaluation call failed: {}", e.what());
        return Evaluation{false, ""};
    }
}

namespace {

AnswerOutcome finish(AnswerOutcome out, AgentSession& session) {
    out.ledger = session.take_ledger();
    out.transcript = session.take_transcript();
    return out;
}

void fall_back(AnswerOutcome& out) {
    out.source = AnswerSource::InternalFallback;
    out.answerable_round.reset();
    out.answer_text = out.ipg.internal_answer;
}

}  // namespace

AnswerOutcome answer_question(std::string_view question, const TopicEntityMap& topic_entities,
                              AgentGateway& agent, const KnowledgeBackend& backend,
                              const AnswerConfig& config) {
    AgentSession session(agent, config.agent, config.token_counter, config.clock);
    AnswerOutcome out;

    out.ipg = generate_inference(question, session, config.triple_count);
    out.warnings = out.ipg.warnings;

    if (config.max_depth == 0) {
        fall_back(out);
        return finish(std::move(out), session);
    }

    auto linking = link_topic_entities(out.ipg, topic_entities);
    out.warnings.insert(out.warnings.end(), linking.warnings.begin(), linking.warnings.end());
    auto topics = std::move(linking.entities);
    if (!linking.has_ids) {
        if (!config.resolve_topic_by_name) {
            out.warnings.emplace_back("topic entities have no ids and name resolution is off; skipping exploration");
            fall_back(out);
            return finish(std::move(out), session);
        }
        std::vector<EntityRef> resolved;
        for (const auto& t : topics) {
            if (auto hit = backend.find_by_label(t.display())) resolved.push_back(*hit);
            else out.warnings.push_back("no entity named '" + t.display() + "' in the knowledge graph");
        }
        if (resolved.empty()) {
            fall_back(out);
            return finish(std::move(out), session);
        }
        topics = std::move(resolved);
    }

    std::vector<EntityRef> labelled;
    try {
        for (const auto& t : topics) labelled.push_back(t.label() ? t : backend.resolve_label(t));
    } catch (const BackendUnavailable& e) {
        out.backend_unavailable = true;
        out.errors.emplace_back(e.what());
        fall_back(out);
        return finish(std::move(out), session);
    }

    auto state = ExplorationState::initial(labelled, config.max_depth, config.explorer.max_width);
    ExploreContext ctx{question, out.ipg.paths, session, backend, config.explorer};
    std::optional<Evaluation> last;

    while (state.round < state.max_depth && state.any_live()) {
        state = run_round(std::move(state), ctx);
        if (state.backend_unavailable) break;
        last = evaluate(state.snapshot(), question, session);
        if (last->answerable) {
            out.source = AnswerSource::Subgraph;
            out.answerable_round = state.round;
            out.answer_text = last->response;
            break;
        }
    }

    out.rounds_executed = state.round;
    out.final_subgraphs = state.snapshot();
    out.history = state.history;
    out.errors.insert(out.errors.end(), state.errors.begin(), state.errors.end());
    out.backend_unavailable = state.backend_unavailable;

    if (out.answerable_round) return finish(std::move(out), session);

    if (config.triple_count == 0 && last && !state.backend_unavailable) {
        out.source = AnswerSource::Subgraph;
        out.best_effort = true;
        out.answer_text = last->response;
        out.warnings.emplace_back("gate never fired and inference paths were skipped; using the last evaluation response");
    } else {
        fall_back(out);
    }
    return finish(std::move(out), session);
}

}  // namespace pathfuse
