// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathfuse/answerer.hpp"

namespace pathfuse {

nlohmann::json subgraph_to_json(const Subgraph& g);
/// Throws std::runtime_error on a malformed document.
Subgraph subgraph_from_json(const nlohmann::json& j);

/// Answer, source, subgraphs, ledger summary and transcript of one question.
nlohmann::json outcome_to_json(std::string_view question, const AnswerOutcome& outcome);

/// The "subgraphs" array of an outcome document.
std::vector<Subgraph> subgraphs_from_outcome_json(const nlohmann::json& doc);

}  // namespace pathfuse
