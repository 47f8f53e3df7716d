// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "pathfuse/core_model.hpp"
#include "pathfuse/errors.hpp"

namespace pathfuse {
namespace {

EntityRef E(const std::string& id) { return EntityRef(id); }
RelationRef R(const std::string& n) { return RelationRef(n); }

TEST(EntityRef, IdentityIgnoresLabel) {
    EXPECT_EQ(EntityRef("m.1", "One"), EntityRef("m.1", "Uno"));
    EXPECT_EQ(EntityRef("m.1", "One").display(), "One");
    EXPECT_EQ(EntityRef("m.1").display(), "m.1");
    EXPECT_THROW(EntityRef(""), std::invalid_argument);
    EXPECT_THROW(EntityRef("m.1", ""), std::invalid_argument);
    EXPECT_THROW(RelationRef(""), std::invalid_argument);
}

TEST(RenderPath, CanberraExample) {
    ReasoningPath p(E("Country associated with Canberra"),
                    {{Direction::Forward, R("has capital"), E("Canberra")},
                     {Direction::Forward, R("has majority party"), E("Australian Labor Party")}});
    EXPECT_EQ(render_path(p),
              "Country associated with Canberra → has capital → Canberra → has majority party → Australian Labor Party");
}

TEST(RenderPath, ZeroHopAndBackward) {
    EXPECT_EQ(render_path(ReasoningPath(E("A"))), "A");
    EXPECT_EQ(render_path(ReasoningPath(E("A"), {{Direction::Backward, R("r"), E("B")}})), "A ← r ← B");
    EXPECT_EQ(render_path(ReasoningPath(E("A"), {{Direction::Backward, R("r"), E("B")}}), ArrowStyle::Ascii),
              "A <- r <- B");
}

TEST(RenderPath, PrefersLabels) {
    ReasoningPath p(EntityRef("m.0a", "Taoism"), {{Direction::Forward, R("religion.founder"), EntityRef("m.0b")}});
    EXPECT_EQ(render_path(p), "Taoism → religion.founder → m.0b");
}

TEST(ParsePath, ForwardChain) {
    const auto p = parse_path("A → r1 → B → r2 → C");
    ASSERT_EQ(p.hops(), 2u);
    EXPECT_EQ(p.origin().id(), "A");
    EXPECT_EQ(p.steps()[0], (PathStep{Direction::Forward, R("r1"), E("B")}));
    EXPECT_EQ(p.steps()[1], (PathStep{Direction::Forward, R("r2"), E("C")}));
    EXPECT_EQ(p.source(), PathSource::External);
}

TEST(ParsePath, AsciiArrowsAndLooseWhitespace) {
    const auto p = parse_path("  A->r1->B <-  r2<-C ", PathSource::Internal);
    ASSERT_EQ(p.hops(), 2u);
    EXPECT_EQ(p.steps()[1].direction, Direction::Backward);
    EXPECT_EQ(p.steps()[1].entity.id(), "C");
    EXPECT_EQ(p.source(), PathSource::Internal);
    EXPECT_EQ(parse_path("A").hops(), 0u);
}

TEST(ParsePath, Malformed) {
    EXPECT_THROW(parse_path("A → B"), MalformedPath);
    EXPECT_THROW(parse_path("A → r ← B"), MalformedPath);
    EXPECT_THROW(parse_path(""), MalformedPath);
    EXPECT_THROW(parse_path("A → r →"), MalformedPath);
    EXPECT_THROW(parse_path("→ r → B"), MalformedPath);
    EXPECT_THROW(parse_path("A → → B"), MalformedPath);
}

std::string random_token(std::mt19937_64& rng) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-() ,'";
    std::uniform_int_distribution<std::size_t> len(1, 12);
    std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
    std::string s;
    const auto n = len(rng);
    while (s.size() < n) s += alphabet[ch(rng)];
    // Tokens never start or end with whitespace, and never contain arrows.
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty() || s.find("<-") != std::string::npos || s.find("->") != std::string::npos) return "x";
    return s;
}

TEST(ParsePath, RoundTripProperty) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> hops(0, 6);
    std::bernoulli_distribution fwd(0.5);
    for (int i = 0; i < 1000; ++i) {
        std::vector<PathStep> steps;
        for (auto n = hops(rng); n > 0; --n) {
            steps.push_back({fwd(rng) ? Direction::Forward : Direction::Backward, R(random_token(rng)),
                             E(random_token(rng))});
        }
        const ReasoningPath p(E(random_token(rng)), steps);
        for (auto style : {ArrowStyle::Unicode, ArrowStyle::Ascii}) {
            const auto text = render_path(p, style);
            const auto back = parse_path(text);
            ASSERT_EQ(back, p) << text;
            for (std::size_t k = 0; k < p.hops(); ++k) {
                ASSERT_EQ(back.steps()[k].entity.id(), p.steps()[k].entity.id());
            }
        }
    }
}

TEST(ReasoningPath, AlternationCounts) {
    const ReasoningPath p(E("A"), {{Direction::Forward, R("r"), E("B")},
                                   {Direction::Backward, R("s"), E("C")},
                                   {Direction::Forward, R("t"), E("A")}});
    EXPECT_EQ(p.entities().size(), p.hops() + 1);
    const auto text = render_path(p, ArrowStyle::Ascii);
    std::size_t arrows = 0;
    for (std::size_t at = 0; (at = text.find("-", at)) != std::string::npos; ++at) ++arrows;
    EXPECT_EQ(arrows, 2 * p.hops());
    EXPECT_EQ(p.tail_entity().id(), "A");
    EXPECT_TRUE(p.contains(E("C")));
    EXPECT_FALSE(p.contains(E("D")));
}

TEST(ReasoningPath, Prepended) {
    const auto p = parse_path("A → r → B").prepended(E("C"), Direction::Forward, R("s"));
    EXPECT_EQ(render_path(p), "C → s → A → r → B");
}

TEST(Subgraph, DeduplicatesAndTracksRound) {
    const auto a = parse_path("A → r → B");
    Subgraph g(E("A"), {a, a, ReasoningPath(E("A"))});
    EXPECT_EQ(g.paths().size(), 2u);
    EXPECT_EQ(g.round(), 1u);
    g = g.with_path(parse_path("A → r → B → s → C"));
    EXPECT_EQ(g.round(), 2u);
    EXPECT_EQ(g.with_path(a).paths().size(), 3u);
    EXPECT_EQ(Subgraph(E("A")).round(), 0u);
}

TEST(Subgraph, TopicMayAppearInsidePath) {
    EXPECT_NO_THROW(Subgraph(E("A"), {parse_path("C → s → A → r → B")}));
    EXPECT_THROW(Subgraph(E("A"), {parse_path("C → s → B")}), std::invalid_argument);
}

TEST(SubgraphTriples, DirectionSemantics) {
    const auto fwd = subgraph_triples(Subgraph(E("A"), {parse_path("A → r → B")}));
    ASSERT_EQ(fwd.size(), 1u);
    EXPECT_EQ(fwd.begin()->triple, (Triple{E("A"), R("r"), E("B")}));
    EXPECT_EQ(fwd.begin()->direction, Direction::Forward);

    const auto bwd = subgraph_triples(Subgraph(E("A"), {parse_path("A ← r ← B")}));
    ASSERT_EQ(bwd.size(), 1u);
    EXPECT_EQ(bwd.begin()->triple, (Triple{E("B"), R("r"), E("A")}));
    EXPECT_EQ(bwd.begin()->direction, Direction::Backward);
}

TEST(SubgraphTriples, SharedEdgeCountsOnce) {
    Subgraph g(E("A"), {parse_path("A → r → B → s → C"), parse_path("A → r → B → t → D")});
    EXPECT_EQ(subgraph_triples(g).size(), 3u);
}

}  // namespace
}  // namespace pathfuse
