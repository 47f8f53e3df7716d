// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pathfuse/errors.hpp"
#include "pathfuse/prompts.hpp"
#include "test_support.hpp"

namespace pathfuse {
namespace {

using testing::golden_path;
using testing::read_text;

const std::string kQuestion = "what is the majority party now in the country where Canberra is located?";

std::string knowledge_path() {
    const ReasoningPath p(EntityRef("Country associated with Canberra"),
                          {{Direction::Forward, RelationRef("has capital"), EntityRef("Canberra")},
                           {Direction::Forward, RelationRef("has majority party"), EntityRef("Australian Labor Party")}},
                          PathSource::Internal);
    const std::vector<ReasoningPath> ps{p};
    return format_paths(ps);
}

std::string relation_list() {
    const std::vector<std::string> names{"location.location.containedby",
                                         "location.capital_of_administrative_division.capital_of"};
    return format_name_list(names);
}

TEST(PromptGolden, InferencePaths) {
    EXPECT_EQ(render_prompt(PromptKind::IPG, {{"tripleCount", "15"}, {"question", kQuestion}}),
              read_text(golden_path("prompt_ipg.txt")));
}

TEST(PromptGolden, RelationExploration) {
    EXPECT_EQ(render_prompt(PromptKind::RelationExploration, {{"question", kQuestion},
                                                              {"topicEntity", "Canberra"},
                                                              {"knowpath_str", knowledge_path()},
                                                              {"relationList", relation_list()}}),
              read_text(golden_path("prompt_relation_exploration.txt")));
}

TEST(PromptGolden, EntityExploration) {
    const std::vector<std::string> entities{"Australia", "Australian Capital Territory"};
    EXPECT_EQ(render_prompt(PromptKind::EntityExploration, {{"question", kQuestion},
                                                            {"topicEntity", "Canberra"},
                                                            {"knowpath_str", knowledge_path()},
                                                            {"relationList", relation_list()},
                                                            {"entityList", format_name_list(entities)}}),
              read_text(golden_path("prompt_entity_exploration.txt")));
}

TEST(PromptGolden, Evaluation) {
    const std::vector<ReasoningPath> sub{
        parse_path("Canberra -> location.location.containedby -> Australia"),
        parse_path("Canberra <- government.governmental_jurisdiction.capital <- Australia")};
    EXPECT_EQ(render_prompt(PromptKind::Evaluation,
                            {{"subgraph", format_paths(sub, ArrowStyle::Ascii)}, {"question", kQuestion}}),
              read_text(golden_path("prompt_evaluation.txt")));
}

TEST(PromptGolden, ChainOfThoughtAndIo) {
    EXPECT_EQ(render_prompt(PromptKind::CoT, {{"question", kQuestion}}), read_text(golden_path("prompt_cot.txt")));
    EXPECT_EQ(render_prompt(PromptKind::IO, {{"question", kQuestion}}), read_text(golden_path("prompt_io.txt")));
}

TEST(RenderPrompt, Examples) {
    const auto eval = render_prompt(PromptKind::Evaluation, {{"subgraph", "A -> r -> B"}, {"question", "Q"}});
    EXPECT_NE(eval.find("Based on the Reasoning_path and your own knowledge"), std::string::npos);
    const auto ipg = render_prompt(PromptKind::IPG, {{"tripleCount", "15"}, {"question", "Q"}});
    EXPECT_NE(ipg.find("List the 15 related knowledge triples"), std::string::npos);
    const auto cot = render_prompt(PromptKind::CoT, {{"question", "Q"}});
    EXPECT_NE(cot.find("The answer is {Washington, D.C.}."), std::string::npos);
}

TEST(RenderPrompt, MissingBinding) {
    EXPECT_THROW(render_prompt(PromptKind::RelationExploration,
                               {{"question", "Q"}, {"topicEntity", "T"}, {"knowpath_str", ""}}),
                 MissingBinding);
    EXPECT_THROW(render_prompt(PromptKind::IPG, {{"question", "Q"}}), MissingBinding);
}

TEST(RenderPrompt, BoundValuesAreNotRescanned) {
    const auto p = render_prompt(PromptKind::CoT, {{"question", "what is $question?"}});
    EXPECT_NE(p.find("Q: what is $question?\nA:"), std::string::npos);
}

TEST(PromptSlots, PerKind) {
    EXPECT_EQ(prompt_slots(PromptKind::IPG), (std::vector<std::string>{"tripleCount", "question"}));
    EXPECT_EQ(prompt_slots(PromptKind::RelationExploration),
              (std::vector<std::string>{"question", "topicEntity", "knowpath_str", "relationList"}));
    EXPECT_EQ(prompt_slots(PromptKind::EntityExploration),
              (std::vector<std::string>{"question", "topicEntity", "knowpath_str", "relationList", "entityList"}));
    EXPECT_EQ(prompt_slots(PromptKind::Evaluation), (std::vector<std::string>{"subgraph", "question"}));
    EXPECT_EQ(prompt_slots(PromptKind::CoT), (std::vector<std::string>{"question"}));
    EXPECT_EQ(prompt_slots(PromptKind::IO), (std::vector<std::string>{"question"}));
}

TEST(PromptKind, NamesRoundTrip) {
    for (auto k : kAllPromptKinds) EXPECT_EQ(prompt_kind_from_string(to_string(k)), k);
    EXPECT_FALSE(prompt_kind_from_string("Summarize"));
}

TEST(FormatNameList, QuotedCommaSeparated) {
    const std::vector<std::string> names{"a", "b c"};
    EXPECT_EQ(format_name_list(names), "\"a\", \"b c\"");
    EXPECT_EQ(format_name_list({}), "");
}

}  // namespace
}  // namespace pathfuse
