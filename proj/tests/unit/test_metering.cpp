// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pathfuse/errors.hpp"
#include "pathfuse/metering.hpp"

namespace pathfuse {
namespace {

using std::chrono::milliseconds;

TEST(ApproxTokens, CeilOfBytesOverFour) {
    EXPECT_EQ(approx_token_count(""), 0u);
    EXPECT_EQ(approx_token_count("a"), 1u);
    EXPECT_EQ(approx_token_count("abcd"), 1u);
    EXPECT_EQ(approx_token_count("abcde"), 2u);
    EXPECT_EQ(approx_token_count(std::string(400, 'x')), 100u);
}

TEST(CostLedger, Arithmetic) {
    CostLedger l;
    const std::string in(400, 'i'), out(80, 'o');
    for (int i = 0; i < 3; ++i) l.record_call(PromptKind::RelationExploration, in, out, milliseconds(10));
    EXPECT_EQ(l.call_count(), 3u);
    EXPECT_EQ(l.input_tokens(), 300u);
    EXPECT_EQ(l.output_tokens(), 60u);
    EXPECT_EQ(l.total_tokens(), 360u);
    EXPECT_EQ(l.wall_time(), milliseconds(30));
}

TEST(CostLedger, EmptyResponseStillCounts) {
    CostLedger l;
    l.record_call(PromptKind::Evaluation, "prompt", "", milliseconds(0));
    EXPECT_EQ(l.call_count(), 1u);
    EXPECT_EQ(l.output_tokens(), 0u);
}

TEST(CostLedger, PerKindSumsToTotals) {
    CostLedger l([](std::string_view s) { return s.size(); });
    l.record_call(PromptKind::IPG, "aaaa", "bb", milliseconds(1));
    l.record_call(PromptKind::Evaluation, "ccc", "d", milliseconds(1));
    l.record_call(PromptKind::Evaluation, "ee", "", milliseconds(1));
    const auto by = l.by_kind();
    std::size_t calls = 0, in = 0, out = 0;
    for (const auto& [k, t] : by) {
        calls += t.calls;
        in += t.input_tokens;
        out += t.output_tokens;
    }
    EXPECT_EQ(calls, l.call_count());
    EXPECT_EQ(in, l.input_tokens());
    EXPECT_EQ(out, l.output_tokens());
    EXPECT_EQ(by.at(PromptKind::Evaluation).calls, 2u);
    EXPECT_EQ(l.records().size(), l.call_count());
}

CostLedger ledger_with(std::size_t calls) {
    CostLedger l([](std::string_view) { return std::size_t{10}; });
    for (std::size_t i = 0; i < calls; ++i) l.record_call(PromptKind::IPG, "", "", milliseconds(500));
    return l;
}

TEST(Aggregate, Means) {
    const std::vector<CostLedger> ls{ledger_with(4), ledger_with(6)};
    const auto row = aggregate(ls, "full");
    EXPECT_DOUBLE_EQ(row.llm_calls, 5.0);
    EXPECT_DOUBLE_EQ(row.input_tokens, 50.0);
    EXPECT_DOUBLE_EQ(row.total_tokens, 100.0);
    EXPECT_DOUBLE_EQ(row.time_seconds, 2.5);
    EXPECT_EQ(row.runs, 2u);
}

TEST(Aggregate, SingleLedgerIsItself) {
    const std::vector<CostLedger> ls{ledger_with(7)};
    const auto row = aggregate(ls);
    EXPECT_DOUBLE_EQ(row.llm_calls, 7.0);
    EXPECT_DOUBLE_EQ(row.total_tokens, 140.0);
}

TEST(Aggregate, EmptyThrows) {
    EXPECT_THROW(aggregate(std::span<const CostLedger>{}), EmptyAggregate);
}

TEST(CostTable, OneDecimalColumns) {
    const std::vector<CostRow> rows{{"full", 100, 9.94, 2742.44, 2368.86, 1.26}, {"CoT", 100, 1, 400, 380, 0.04}};
    const auto table = render_cost_table(rows);
    EXPECT_EQ(table.substr(0, table.find('\n')), "Method  LLM Call  Total Token  Input Token  Time(s)");
    EXPECT_NE(table.find("full         9.9       2742.4       2368.9      1.3"), std::string::npos) << table;
    EXPECT_NE(table.find("CoT          1.0        400.0        380.0      0.0"), std::string::npos) << table;
    EXPECT_NE(table.find("retries"), std::string::npos);
    EXPECT_NE(table.find("approximate"), std::string::npos);
    EXPECT_EQ(render_cost_table(rows, false).find("approximate"), std::string::npos);

    EXPECT_EQ(render_cost_csv(rows),
              "method,runs,llm_call,total_token,input_token,time_s\n"
              "full,100,9.9,2742.4,2368.9,1.3\n"
              "CoT,100,1.0,400.0,380.0,0.0\n");
}

}  // namespace
}  // namespace pathfuse
