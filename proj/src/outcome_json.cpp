// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/outcome_json.hpp"

#include <stdexcept>

namespace pathfuse {

namespace {

nlohmann::json entity_json(const EntityRef& e) {
    nlohmann::json j = {{"id", e.id()}};
    if (e.label()) j["label"] = *e.label();
    return j;
}

EntityRef entity_from(const nlohmann::json& j) {
    if (j.contains("label")) return EntityRef(j.at("id").get<std::string>(), j.at("label").get<std::string>());
    return EntityRef(j.at("id").get<std::string>());
}

}  // namespace

nlohmann::json subgraph_to_json(const Subgraph& g) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : g.paths()) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : p.steps()) {
            steps.push_back({{"direction", s.direction == Direction::Forward ? "forward" : "backward"},
                             {"relation", s.relation.name()},
                             {"entity", entity_json(s.entity)}});
        }
        paths.push_back({{"origin", entity_json(p.origin())},
                         {"steps", std::move(steps)},
                         {"text", render_path(p)}});
    }
    return {{"topic", entity_json(g.topic())}, {"round", g.round()}, {"paths", std::move(paths)}};
}

Subgraph subgraph_from_json(const nlohmann::json& j) {
    try {
        std::vector<ReasoningPath> paths;
        for (const auto& p : j.at("paths")) {
            std::vector<PathStep> steps;
            for (const auto& s : p.at("steps")) {
                const auto dir = s.at("direction").get<std::string>();
                if (dir != "forward" && dir != "backward") throw std::runtime_error("bad direction '" + dir + "'");
                steps.push_back(PathStep{dir == "forward" ? Direction::Forward : Direction::Backward,
                                         RelationRef(s.at("relation").get<std::string>()),
                                         entity_from(s.at("entity"))});
            }
            paths.emplace_back(entity_from(p.at("origin")), std::move(steps));
        }
        return Subgraph(entity_from(j.at("topic")), std::move(paths));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed subgraph document: ") + e.what());
    }
}

nlohmann::json outcome_to_json(std::string_view question, const AnswerOutcome& outcome) {
    nlohmann::json subgraphs = nlohmann::json::array();
    for (const auto& g : outcome.final_subgraphs) subgraphs.push_back(subgraph_to_json(g));
    nlohmann::json transcript = nlohmann::json::array();
    for (const auto& t : outcome.transcript) {
        nlohmann::json e = {{"kind", to_string(t.kind)}, {"prompt", t.prompt}, {"response", t.response}};
        if (t.error) e["error"] = *t.error;
        transcript.push_back(std::move(e));
    }
    nlohmann::json j = {
        {"question", question},
        {"answer", outcome.answer_text},
        {"source", to_string(outcome.source)},
        {"best_effort", outcome.best_effort},
        {"rounds_executed", outcome.rounds_executed},
        {"subgraphs", std::move(subgraphs)},
        {"ledger",
         {{"llm_calls", outcome.ledger.call_count()},
          {"input_tokens", outcome.ledger.input_tokens()},
          {"output_tokens", outcome.ledger.output_tokens()},
          {"total_tokens", outcome.ledger.total_tokens()},
          {"time_s", std::chrono::duration<double>(outcome.ledger.wall_time()).count()}}},
        {"transcript", std::move(transcript)},
        {"warnings", outcome.warnings},
        {"errors", outcome.errors},
    };
    j["answerable_round"] = outcome.answerable_round ? nlohmann::json(*outcome.answerable_round) : nlohmann::json();
    return j;
}

std::vector<Subgraph> subgraphs_from_outcome_json(const nlohmann::json& doc) {
    if (!doc.contains("subgraphs") || !doc["subgraphs"].is_array()) {
        throw std::runtime_error("document has no \"subgraphs\" array");
    }
    std::vector<Subgraph> out;
    for (const auto& g : doc["subgraphs"]) out.push_back(subgraph_from_json(g));
    return out;
}

}  // namespace pathfuse
