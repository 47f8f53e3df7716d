// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/prompt_kind.hpp"

namespace pathfuse {

using TokenCounter = std::function<std::size_t(std::string_view)>;

/// Approximate token count: ceil(bytes / 4).
std::size_t approx_token_count(std::string_view text) noexcept;

struct CallRecord {
    PromptKind kind;
    std::size_t input_tokens = 0;
    std::size_t output_tokens = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct KindTotals {
    std::size_t calls = 0;
    std::size_t input_tokens = 0;
    std::size_t output_tokens = 0;
};

/// Per-question cost record. One CallRecord per agent completion, retries included.
class CostLedger {
public:
    explicit CostLedger(TokenCounter counter = approx_token_count);

    void record_call(PromptKind kind, std::string_view prompt_text, std::string_view response_text,
                     std::chrono::nanoseconds elapsed);

    std::size_t call_count() const noexcept { return records_.size(); }
    std::size_t input_tokens() const noexcept { return input_tokens_; }
    std::size_t output_tokens() const noexcept { return output_tokens_; }
    std::size_t total_tokens() const noexcept { return input_tokens_ + output_tokens_; }
    std::chrono::nanoseconds wall_time() const noexcept { return wall_time_; }

    const std::vector<CallRecord>& records() const noexcept { return records_; }
    std::map<PromptKind, KindTotals> by_kind() const;

private:
    TokenCounter counter_;
    std::vector<CallRecord> records_;
    std::size_t input_tokens_ = 0;
    std::size_t output_tokens_ = 0;
    std::chrono::nanoseconds wall_time_{0};
};

/// Means over a set of questions, one row of the cost table.
struct CostRow {
    std::string method;
    std::size_t runs = 0;
    double llm_calls = 0;
    double total_tokens = 0;
    double input_tokens = 0;
    double time_seconds = 0;
};

/// Throws EmptyAggregate when `ledgers` is empty.
CostRow aggregate(std::span<const CostLedger> ledgers, std::string method = "");

/// Aligned plain-text table: Method, LLM Call, Total Token, Input Token, Time(s),
/// one decimal place, followed by a footer describing the counting policy.
std::string render_cost_table(std::span<const CostRow> rows, bool approximate_tokens = true);

/// "method,runs,llm_call,total_token,input_token,time_s" header plus one row each.
std::string render_cost_csv(std::span<const CostRow> rows);

}  // namespace pathfuse
