// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "pathfuse/agent.hpp"
#include "pathfuse/errors.hpp"
#include "pathfuse/live_agent.hpp"
#include "pathfuse/response_parser.hpp"
#include "pathfuse/scripted_agent.hpp"
#include "test_support.hpp"

namespace pathfuse {
namespace {

using testing::entry;

class FailingAgent final : public AgentGateway {
public:
    std::string complete(const AgentRequest&) override { throw AgentUnavailable("down"); }
};

TEST(ScriptedAgent, ReplaysInOrder) {
    ScriptedAgent agent({entry(PromptKind::IPG, "one"), ScriptEntry{std::nullopt, "needle", "two"}});
    EXPECT_EQ(agent.complete({PromptKind::IPG, "anything"}), "one");
    EXPECT_EQ(agent.remaining(), 1u);
    EXPECT_EQ(agent.complete({PromptKind::Evaluation, "hay needle hay"}), "two");
    EXPECT_EQ(agent.consumed(), 2u);
    EXPECT_THROW(agent.complete({PromptKind::IPG, "more"}), ScriptMismatch);
    EXPECT_TRUE(agent.order_sensitive());
}

TEST(ScriptedAgent, MismatchIsAnError) {
    ScriptedAgent by_kind({entry(PromptKind::IPG, "x")});
    EXPECT_THROW(by_kind.complete({PromptKind::CoT, "p"}), ScriptMismatch);
    ScriptedAgent by_text({entry(PromptKind::IPG, "x", "Canberra")});
    EXPECT_THROW(by_text.complete({PromptKind::IPG, "Sydney"}), ScriptMismatch);
}

TEST(ScriptedAgent, LoadsArrayAndLines) {
    const auto array = ScriptedAgent::load_script(testing::fixture_path("chain_script.json").string());
    ASSERT_EQ(array.size(), 10u);
    EXPECT_EQ(array[1].kind, PromptKind::RelationExploration);
    EXPECT_EQ(array[1].contains, std::optional<std::string>("loc.contained_by"));
    const auto lines = ScriptedAgent::load_script(testing::fixture_path("chain_round1_script.jsonl").string());
    EXPECT_EQ(lines.size(), 4u);

    testing::TempDir dir;
    const auto any = dir.write("any.jsonl", R"({"kind": "*", "response": "r"})" "\n");
    EXPECT_FALSE(ScriptedAgent::load_script(any.string()).at(0).kind);
    const auto bad_kind = dir.write("bad.jsonl", R"({"kind": "Summarize", "response": "r"})" "\n");
    EXPECT_THROW(ScriptedAgent::load_script(bad_kind.string()), ScriptMismatch);
    EXPECT_THROW(ScriptedAgent::load_script((dir.path() / "none.json").string()), ScriptMismatch);
}

TEST(AgentSession, MetersEveryCall) {
    ScriptedAgent agent({entry(PromptKind::IPG, "abcd"), entry(PromptKind::CoT, "")});
    AgentSession s(agent, AgentConfig{}, approx_token_count, testing::stepping_clock(std::chrono::milliseconds(5)));
    EXPECT_EQ(s.complete(PromptKind::IPG, "12345678"), "abcd");
    EXPECT_EQ(s.complete(PromptKind::CoT, "x"), "");
    EXPECT_EQ(s.ledger().call_count(), 2u);
    EXPECT_EQ(s.ledger().input_tokens(), 2u + 1u);
    EXPECT_EQ(s.ledger().output_tokens(), 1u);
    EXPECT_EQ(s.ledger().wall_time(), std::chrono::milliseconds(10));
    ASSERT_EQ(s.transcript().size(), 2u);
    EXPECT_EQ(s.transcript()[0].prompt, "12345678");
    EXPECT_EQ(s.transcript()[0].response, "abcd");
}

TEST(AgentSession, RetriesMalformedAndMetersEachAttempt) {
    ScriptedAgent agent({entry(PromptKind::Evaluation, "garbage"), entry(PromptKind::Evaluation, "still garbage"),
                         entry(PromptKind::Evaluation, testing::evaluation_reply(true, "ok"))});
    AgentSession s(agent, AgentConfig{});
    auto e = s.complete_parsed(PromptKind::Evaluation, "p", [](const std::string& t) { return parse_evaluation(t); });
    ASSERT_TRUE(e);
    EXPECT_TRUE(e->answerable);
    EXPECT_EQ(s.ledger().call_count(), 3u);
    EXPECT_EQ(agent.consumed(), s.ledger().call_count());
}

TEST(AgentSession, ExhaustedRetriesGiveNothing) {
    ScriptedAgent agent({entry(PromptKind::Evaluation, "a"), entry(PromptKind::Evaluation, "b")});
    AgentConfig cfg;
    cfg.max_retries_on_malformed = 1;
    AgentSession s(agent, cfg);
    EXPECT_FALSE(s.complete_parsed(PromptKind::Evaluation, "p", [](const std::string& t) { return parse_evaluation(t); }));
    EXPECT_EQ(s.ledger().call_count(), 2u);
}

TEST(AgentSession, FailedCallsAreMeteredAndRethrown) {
    FailingAgent agent;
    AgentSession s(agent, AgentConfig{});
    EXPECT_THROW(s.complete(PromptKind::IPG, "p"), AgentUnavailable);
    EXPECT_EQ(s.ledger().call_count(), 1u);
    ASSERT_EQ(s.transcript().size(), 1u);
    EXPECT_TRUE(s.transcript()[0].error);
    EXPECT_EQ(s.ledger().output_tokens(), 0u);
}

TEST(ChatProtocol, RequestAndResponseShape) {
    const auto req = chat_protocol::build_request("gpt-3.5-turbo", "hello", 0.4);
    EXPECT_EQ(req["model"], "gpt-3.5-turbo");
    EXPECT_EQ(req["messages"][0]["role"], "user");
    EXPECT_EQ(req["messages"][0]["content"], "hello");
    EXPECT_DOUBLE_EQ(req["temperature"].get<double>(), 0.4);
    const auto ok = nlohmann::json::parse(R"({"choices":[{"message":{"role":"assistant","content":"hi"}}]})");
    EXPECT_EQ(chat_protocol::extract_completion(ok), "hi");
    EXPECT_THROW(chat_protocol::extract_completion(nlohmann::json::parse(R"({"error":"x"})")), AgentUnavailable);
}

class FakeChatServer {
public:
    int status = 200;
    std::string last_auth;
    nlohmann::json last_body;

    FakeChatServer() {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            last_auth = req.get_header_value("Authorization");
            last_body = nlohmann::json::parse(req.body);
            if (status != 200) {
                res.status = status;
                res.set_content("rate limited", "text/plain");
                return;
            }
            const auto prompt = last_body["messages"][0]["content"].get<std::string>();
            res.set_content(
                nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo: " + prompt}}}}}}}
                    .dump(),
                "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeChatServer() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

TEST(LiveAgent, PostsChatRequest) {
    FakeChatServer server;
    ::setenv("PATHFUSE_TEST_KEY", "sk-test", 1);
    AgentConfig cfg;
    cfg.model_name = "test-model";
    LiveAgent agent(server.url(), cfg, "PATHFUSE_TEST_KEY");
    EXPECT_EQ(agent.complete({PromptKind::IO, "Q: hi", 0.25}), "echo: Q: hi");
    EXPECT_EQ(server.last_auth, "Bearer sk-test");
    EXPECT_EQ(server.last_body["model"], "test-model");
    EXPECT_DOUBLE_EQ(server.last_body["temperature"].get<double>(), 0.25);
    EXPECT_FALSE(agent.order_sensitive());

    server.status = 429;
    EXPECT_THROW(agent.complete({PromptKind::IO, "Q: hi", 0.4}), AgentUnavailable);
}

TEST(LiveAgent, UnreachableEndpoint) {
    int port = 0;
    {
        httplib::Server probe;
        port = probe.bind_to_any_port("127.0.0.1");
    }
    AgentConfig cfg;
    cfg.timeout = std::chrono::milliseconds(500);
    LiveAgent agent("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions", cfg);
    EXPECT_THROW(agent.complete({PromptKind::IO, "x", 0.4}), AgentUnavailable);
}

}  // namespace
}  // namespace pathfuse
