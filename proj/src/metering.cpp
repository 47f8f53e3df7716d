// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/metering.hpp"

#include <fmt/format.h>

#include "pathfuse/errors.hpp"

namespace pathfuse {

std::size_t approx_token_count(std::string_view text) noexcept {
    return (text.size() + 3) / 4;
}

CostLedger::CostLedger(TokenCounter counter) : counter_(std::move(counter)) {}

void CostLedger::record_call(PromptKind kind, std::string_view prompt_text,
                             std::string_view response_text, std::chrono::nanoseconds elapsed) {
    CallRecord rec{kind, counter_(prompt_text), counter_(response_text), elapsed};
    input_tokens_ += rec.input_tokens;
    output_tokens_ += rec.output_tokens;
    wall_time_ += elapsed;
    records_.push_back(rec);
}

std::map<PromptKind, KindTotals> CostLedger::by_kind() const {
    std::map<PromptKind, KindTotals> out;
    for (const auto& r : records_) {
        auto& t = out[r.kind];
        ++t.calls;
        t.input_tokens += r.input_tokens;
        t.output_tokens += r.output_tokens;
    }
    return out;
}

CostRow aggregate(std::span<const CostLedger> ledgers, std::string method) {
    if (ledgers.empty()) throw EmptyAggregate("no ledgers to aggregate");
    CostRow row;
    row.method = std::move(method);
    row.runs = ledgers.size();
    for (const auto& l : ledgers) {
        row.llm_calls += static_cast<double>(l.call_count());
        row.total_tokens += static_cast<double>(l.total_tokens());
        row.input_tokens += static_cast<double>(l.input_tokens());
        row.time_seconds += std::chrono::duration<double>(l.wall_time()).count();
    }
    const auto n = static_cast<double>(ledgers.size());
    row.llm_calls /= n;
    row.total_tokens /= n;
    row.input_tokens /= n;
    row.time_seconds /= n;
    return row;
}

std::string render_cost_table(std::span<const CostRow> rows, bool approximate_tokens) {
    std::size_t width = 6;  // "Method"
    for (const auto& r : rows) width = std::max(width, r.method.size());

    std::string out = fmt::format("{:<{}}  {:>8}  {:>11}  {:>11}  {:>7}\n", "Method", width,
                                  "LLM Call", "Total Token", "Input Token", "Time(s)");
    for (const auto& r : rows) {
        out += fmt::format("{:<{}}  {:>8.1f}  {:>11.1f}  {:>11.1f}  {:>7.1f}\n", r.method, width,
                           r.llm_calls, r.total_tokens, r.input_tokens, r.time_seconds);
    }
    out += "Means per question. LLM Call counts every completion, retries on malformed output included.\n";
    if (approximate_tokens) {
        out += "Token counts are approximate (ceil(bytes / 4)).\n";
    }
    out += "Time covers agent calls only.\n";
    return out;
}

std::string render_cost_csv(std::span<const CostRow> rows) {
    std::string out = "method,runs,llm_call,total_token,input_token,time_s\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{:.1f},{:.1f},{:.1f},{:.1f}\n", r.method, r.runs, r.llm_calls,
                           r.total_tokens, r.input_tokens, r.time_seconds);
    }
    return out;
}

}  // namespace pathfuse
