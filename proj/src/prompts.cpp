// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/prompts.hpp"

#include <algorithm>

#include "pathfuse/errors.hpp"

namespace pathfuse {

namespace {

constexpr std::string_view kIpg =
    R"(You need to answer Question using follow steps:
step1: You need to extract the most relevant topic entities from the Question.
step2: Based on the topic entities and Question. List the $tripleCount related knowledge triples from high to low in terms of relevance to the Question. The triples are given in the form of (entity, relation, entity).
step3: Based on the knowledge triples you listed, combined with the Question and topic entities, you need to give the final answer. In addition, you need to give the reasoning path. The overall format should be "entity1→relation1→entity2→relation2→entity3→...→end".
The answer format is {reasoning_path : ["entity1→relation1→entity2→relation2→entity3→...→end"], "response": "based on the knowledge, the answer to the question $question is xxxx" }
Query:$question
Answer:)";

constexpr std::string_view kRelation =
    R"(Dict : {
"Question" : $question,
"Topic entity" : $topicEntity,
"Knowledge Path" : $knowpath_str,
}
RelationList: $relationList
Now you need to find out up to 7 most relevant relations from RelationList to each entry in the dictionary Dict and put them into a list called Relations. The answer format is: { "Relations":[xxx, xxx, xxx,...] (length up to 5) }. Do not output any extra content except what is required by the format.
Answer:)";

constexpr std::string_view kEntity =
    R"(Dict : {
"Question" : $question,
"Topic entity" : $topicEntity,
"Knowledge Path" : $knowpath_str,
"RelationList" : $relationList,
}
EntityList: $entityList
Now you need to find out up to 7 entities that are most relevant to each entry in the dictionary Dict from EntityList by relevance, and put them into a list called Entities. The answer format is: { "Entities":[xxx, xxx, xxx,...] (length up to 5) }. Do not output any extra content except what is required by the format.
Answer:)";

constexpr std::string_view kEvaluation =
    R"(Reasoning_path:$subgraph
Based on the Reasoning_path and your own knowledge, you need to determine whether the Question:$question can be answered. '->' and '<-' indicate the direction of Reasoning_path between entities and relationships.
Requests:
1. The answer format is: { "Answerable": True or False, "Response": "the answer to the question $question is xxxx" }
Answer:)";

constexpr std::string_view kCot =
    R"(Q: What state is home to the university that is represented in sports by George Washington Colonials men's basketball?
A: First, the education institution has a sports team named George Washington Colonials men's basketball in is George Washington University, Second, George Washington University is in Washington D.C.
The answer is {Washington, D.C.}.

Q: Who lists Pramatha Chaudhuri as an influence and wrote Jana Gana Mana?
A: First, Bharoto Bhagyo Bidhata wrote Jana Gana Mana. Second, Bharoto Bhagyo Bidhata lists Pramatha Chaudhuri as an influence.
The answer is {Bharoto Bhagyo Bidhata}.

Q: Who was the artist nominated for an award for You Drive Me Crazy?
A: First, the artist nominated for an award for You Drive Me Crazy is Britney Spears.
The answer is {Jason Allen Alexander}.

Q: What person born in Siegen influenced the work of Vincent Van Gogh?
A: First, Peter Paul Rubens, Claude Monet and etc. influenced the work of Vincent Van Gogh. Second, Peter Paul Rubens born in Siegen.
The answer is {Peter Paul Rubens}.

Q: What is the country close to Russia where Mikheil Saakashvii holds a government position?
A: First, China, Norway, Finland, Estonia and Georgia is close to Russia. Second, Mikheil Saakashvii holds a government position at Georgia.
The answer is {Georgia}.

Q: What drug did the actor who portrayed the character Urethane Wheels Guy overdosed on?
A: First, Mitchell Lee Hedberg portrayed character Urethane Wheels Guy. Second, Mitchell Lee Hedberg overdose Heroin.
The answer is {Heroin}.

Q: $question
A:)";

// Same six questions as the CoT prompt, answers only.
constexpr std::string_view kIo =
    R"(Q: What state is home to the university that is represented in sports by George Washington Colonials men's basketball?
A: {Washington, D.C.}

Q: Who lists Pramatha Chaudhuri as an influence and wrote Jana Gana Mana?
A: {Bharoto Bhagyo Bidhata}

Q: Who was the artist nominated for an award for You Drive Me Crazy?
A: {Jason Allen Alexander}

Q: What person born in Siegen influenced the work of Vincent Van Gogh?
A: {Peter Paul Rubens}

Q: What is the country close to Russia where Mikheil Saakashvii holds a government position?
A: {Georgia}

Q: What drug did the actor who portrayed the character Urethane Wheels Guy overdosed on?
A: {Heroin}

Q: $question
A:)";

constexpr bool is_slot_start(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
constexpr bool is_slot_char(char c) noexcept { return is_slot_start(c) || (c >= '0' && c <= '9'); }

template <class OnText, class OnSlot>
void scan(std::string_view tmpl, OnText on_text, OnSlot on_slot) {
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '$' && i + 1 < tmpl.size() && is_slot_start(tmpl[i + 1])) {
            std::size_t j = i + 1;
            while (j < tmpl.size() && is_slot_char(tmpl[j])) ++j;
            on_slot(tmpl.substr(i + 1, j - i - 1));
            i = j;
        } else {
            on_text(tmpl[i]);
            ++i;
        }
    }
}

}  // namespace

std::string_view prompt_template(PromptKind kind) noexcept {
    switch (kind) {
        case PromptKind::IPG: return kIpg;
        case PromptKind::RelationExploration: return kRelation;
        case PromptKind::EntityExploration: return kEntity;
        case PromptKind::Evaluation: return kEvaluation;
        case PromptKind::CoT: return kCot;
        case PromptKind::IO: return kIo;
    }
    return {};
}

std::vector<std::string> prompt_slots(PromptKind kind) {
    std::vector<std::string> out;
    scan(prompt_template(kind), [](char) {}, [&](std::string_view slot) {
        if (std::find(out.begin(), out.end(), slot) == out.end()) out.emplace_back(slot);
    });
    return out;
}

std::string render_prompt(PromptKind kind, const PromptBindings& bindings) {
    const auto tmpl = prompt_template(kind);
    std::string out;
    out.reserve(tmpl.size() + 256);
    scan(tmpl, [&](char c) { out += c; }, [&](std::string_view slot) {
        auto it = bindings.find(slot);
        if (it == bindings.end()) {
            throw MissingBinding(std::string(to_string(kind)) + " prompt needs $" + std::string(slot));
        }
        out += it->second;
    });
    return out;
}

std::string format_name_list(std::span<const std::string> names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += '"';
        out += names[i];
        out += '"';
    }
    return out;
}

std::string format_paths(std::span<const ReasoningPath> paths, ArrowStyle style) {
    std::string out;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (i) out += '\n';
        out += render_path(paths[i], style);
    }
    return out;
}

}  // namespace pathfuse
