// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/inference_paths.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "pathfuse/prompts.hpp"
#include "pathfuse/response_parser.hpp"
#include "text_util.hpp"

namespace pathfuse {

IpgResult generate_inference(std::string_view question, AgentSession& agent, std::size_t n) {
    IpgResult result;
    result.triple_count_requested = n;
    if (n == 0) return result;

    const auto prompt = render_prompt(PromptKind::IPG, {{"tripleCount", std::to_string(n)},
                                                        {"question", std::string(question)}});
    std::optional<IpgParse> parsed;
    try {
        parsed = agent.complete_parsed(PromptKind::IPG, prompt, [](const std::string& text) {
            return parse_ipg(text);
        });
    } catch (const AgentUnavailable& e) {
        result.warnings.push_back(std::string("inference paths call failed: ") + e.what());
        return result;
    }
    if (!parsed) {
        result.warnings.emplace_back("inference paths response unparseable after retries");
        return result;
    }

    result.ok = true;
    result.paths = std::move(parsed->paths);
    result.triples = std::move(parsed->triples);
    result.internal_answer = std::move(parsed->answer);
    if (parsed->dropped_paths > 0) {
        result.warnings.push_back("dropped " + std::to_string(parsed->dropped_paths) +
                                  " unparseable reasoning path(s)");
    }
    for (const auto& p : result.paths) {
        const auto& origin = p.origin();
        if (std::find(result.topic_entities.begin(), result.topic_entities.end(), origin) ==
            result.topic_entities.end()) {
            result.topic_entities.emplace_back(origin.id(), origin.id());
        }
    }
    return result;
}

TopicLinking link_topic_entities(const IpgResult& ipg, const TopicEntityMap& dataset_entities) {
    TopicLinking out;
    if (!dataset_entities.empty()) {
        out.has_ids = true;
        for (const auto& [label, id] : dataset_entities) {
            const auto ref = label.empty() ? EntityRef(id) : EntityRef(id, label);
            if (std::find(out.entities.begin(), out.entities.end(), ref) == out.entities.end()) {
                out.entities.push_back(ref);
            }
        }
        for (const auto& guess : ipg.topic_entities) {
            const bool known = std::any_of(dataset_entities.begin(), dataset_entities.end(),
                                           [&](const auto& kv) { return text_util::iequals(kv.first, guess.display()); });
            if (!known) {
                auto msg = "topic entity '" + guess.display() + "' from inference paths is not in the dataset set";
                spdlog::debug("{}", msg);
                out.warnings.push_back(std::move(msg));
            }
        }
        return out;
    }
    if (ipg.topic_entities.empty()) {
        throw NoTopicEntities("neither the dataset nor the inference paths name a topic entity");
    }
    out.entities = ipg.topic_entities;
    return out;
}

}  // namespace pathfuse
