// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/agent.hpp"
#include "pathfuse/answerer.hpp"
#include "pathfuse/inference_paths.hpp"
#include "pathfuse/kg_backend.hpp"
#include "pathfuse/metering.hpp"

namespace pathfuse {

struct QARecord {
    std::string id;
    std::string question;
    TopicEntityMap topic_entities;
    std::vector<std::string> gold_answers;
    std::string dataset_id;
};

struct DatasetLoad {
    std::vector<QARecord> records;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

/// Reads one JSON object per line ({"id", "question", "topic_entities":
/// {name: mid}, "answers": [...]}) or a single JSON array of such objects.
/// Entries without a question or answers are skipped and counted.
/// Throws UnreadableDataset when the file cannot be read.
DatasetLoad load_dataset(const std::string& path, const std::string& dataset_id);

enum class MatchPolicy {
    /// Normalized equality, or the gold alias appearing as whole tokens in the prediction.
    Lenient,
    /// Normalized equality only.
    Strict,
};

/// Lowercase, collapse whitespace, strip leading articles and terminal
/// punctuation, repeated to a fixed point (so normalization is idempotent).
std::string normalize_answer(std::string_view s);

bool hits_at_1(std::string_view predicted, std::span<const std::string> gold,
               MatchPolicy policy = MatchPolicy::Lenient);

struct RecordResult {
    std::string id;
    std::string predicted;
    bool hit = false;
    std::optional<std::string> error;
    std::size_t llm_calls = 0;
    std::vector<PromptKind> kinds_seen;
    /// Present for full-pipeline runs.
    std::optional<AnswerSource> source;
    std::vector<Subgraph> subgraphs;
};

struct EvalResult {
    std::string dataset_id;
    std::string method;
    std::vector<RecordResult> records;
    double hits_at_1 = 0;  // percentage
    /// Absent when there were no records to aggregate.
    std::optional<CostRow> cost;
};

enum class BaselineMode { IO, CoT };

struct RunOptions {
    std::size_t workers = 4;
    MatchPolicy policy = MatchPolicy::Lenient;
    std::string method;
};

/// One IO or CoT completion per record, scored with hits_at_1.
EvalResult run_baseline(BaselineMode mode, std::span<const QARecord> records, AgentGateway& agent,
                        const AnswerConfig& config, RunOptions options = {});

/// answer_question per record on a bounded worker pool; results keep input order.
/// Order-sensitive agents are driven from a single worker.
EvalResult run_pipeline(std::span<const QARecord> records, AgentGateway& agent, const KnowledgeBackend& backend,
                    const AnswerConfig& config, RunOptions options = {});

/// Aligned "Dataset Method Records Hits@1" table.
std::string render_hits_table(std::span<const EvalResult> results);
std::string render_hits_csv(std::span<const EvalResult> results);

}  // namespace pathfuse
