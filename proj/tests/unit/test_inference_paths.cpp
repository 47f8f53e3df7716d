// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "pathfuse/errors.hpp"
#include "pathfuse/inference_paths.hpp"
#include "pathfuse/scripted_agent.hpp"
#include "test_support.hpp"

namespace pathfuse {
namespace {

using testing::entry;

TEST(GenerateInference, CanberraExample) {
    ScriptedAgent agent({entry(PromptKind::IPG, testing::read_text(testing::fixture_path("ipg_prose_answer.txt")),
                               "Query:what is the majority party now in the country where Canberra is located?")});
    AgentSession s(agent, AgentConfig{});
    const auto r =
        generate_inference("what is the majority party now in the country where Canberra is located?", s, 15);
    EXPECT_TRUE(r.ok);
    ASSERT_EQ(r.topic_entities.size(), 1u);
    EXPECT_EQ(r.topic_entities[0].display(), "Country associated with Canberra");
    ASSERT_EQ(r.paths.size(), 1u);
    EXPECT_EQ(r.paths[0].origin().id(), "Country associated with Canberra");
    EXPECT_NE(r.internal_answer.find("Australian Labor Party"), std::string::npos);
    EXPECT_EQ(r.triples.size(), 9u);
    EXPECT_EQ(r.triple_count_requested, 15u);
    EXPECT_EQ(s.ledger().call_count(), 1u);
    EXPECT_NE(s.transcript()[0].prompt.find("List the 15 related knowledge triples"), std::string::npos);
}

TEST(GenerateInference, ZeroTriplesSkipsTheCall) {
    ScriptedAgent agent({});
    AgentSession s(agent, AgentConfig{});
    const auto r = generate_inference("q", s, 0);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.paths.empty());
    EXPECT_TRUE(r.internal_answer.empty());
    EXPECT_EQ(s.ledger().call_count(), 0u);
}

TEST(GenerateInference, TripleCountReachesPrompt) {
    ScriptedAgent agent({entry(PromptKind::IPG, testing::ipg_reply({"A → r → B"}, "B"), "List the 30 related")});
    AgentSession s(agent, AgentConfig{});
    EXPECT_EQ(generate_inference("q", s, 30).triple_count_requested, 30u);
}

TEST(GenerateInference, MalformedDegradesWithWarning) {
    ScriptedAgent agent({entry(PromptKind::IPG, "no idea"), entry(PromptKind::IPG, "still no idea"),
                         entry(PromptKind::IPG, "sorry")});
    AgentSession s(agent, AgentConfig{});
    const auto r = generate_inference("q", s, 15);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(s.ledger().call_count(), 3u);
}

TEST(GenerateInference, SalvagesPathsIndividually) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> entries;
        std::size_t good = 0;
        for (int k = 0; k < 6; ++k) {
            switch (rng() % 3) {
                case 0: entries.push_back("T → r" + std::to_string(k) + " → X" + std::to_string(k)); ++good; break;
                case 1: entries.push_back("T → missing relation"); break;
                default: entries.push_back("→ dangling → "); break;
            }
        }
        ScriptedAgent agent({entry(PromptKind::IPG, testing::ipg_reply(entries, "X"))});
        AgentSession s(agent, AgentConfig{});
        const auto r = generate_inference("q", s, 15);
        ASSERT_EQ(r.paths.size(), good);
        ASSERT_EQ(r.warnings.empty(), good == entries.size());
    }
}

TEST(LinkTopicEntities, DatasetPassthrough) {
    const auto l = link_topic_entities(IpgResult{}, {{"Canberra", "m.0b1t1"}});
    ASSERT_EQ(l.entities.size(), 1u);
    EXPECT_EQ(l.entities[0], EntityRef("m.0b1t1"));
    EXPECT_EQ(l.entities[0].display(), "Canberra");
    EXPECT_TRUE(l.has_ids);
}

TEST(LinkTopicEntities, BothEmpty) {
    EXPECT_THROW(link_topic_entities(IpgResult{}, {}), NoTopicEntities);
}

TEST(LinkTopicEntities, DatasetWinsOverDisagreement) {
    IpgResult ipg;
    ipg.topic_entities = {EntityRef("Sydney", "Sydney"), EntityRef("canberra", "canberra")};
    const auto l = link_topic_entities(ipg, {{"Canberra", "m.0b1t1"}, {"Australia", "m.0chghy"}});
    ASSERT_EQ(l.entities.size(), 2u);
    EXPECT_EQ(l.entities[0].id(), "m.0b1t1");
    EXPECT_EQ(l.entities[1].id(), "m.0chghy");
    ASSERT_EQ(l.warnings.size(), 1u);
    EXPECT_NE(l.warnings[0].find("Sydney"), std::string::npos);
}

TEST(LinkTopicEntities, IpgLabelsWithoutIds) {
    IpgResult ipg;
    ipg.topic_entities = {EntityRef("Canberra", "Canberra")};
    const auto l = link_topic_entities(ipg, {});
    EXPECT_FALSE(l.has_ids);
    ASSERT_EQ(l.entities.size(), 1u);
}

}  // namespace
}  // namespace pathfuse
