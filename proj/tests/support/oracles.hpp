// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pathfuse/core_model.hpp"

// Reference implementations used only as test oracles. They share no code
// with the engine beyond the plain data types.
namespace pathfuse::oracle {

/// Path update as literal list concatenation over rendered tokens, e.g.
/// {"A", "→", "r", "→", "B"}.
std::vector<std::string> concat_update(const std::vector<std::string>& tokens, bool path_is_head, bool is_head,
                                       const std::string& r, const std::string& e);

std::string join_tokens(const std::vector<std::string>& tokens);

/// (forward?, relation, entity id) per step.
using StepKey = std::tuple<bool, std::string, std::string>;
using PathKey = std::pair<std::string, std::vector<StepKey>>;

PathKey key_of(const ReasoningPath& p);

/// Every walk of exactly `hops` steps from `origin`, following triples either
/// way, found by exhaustive depth-first enumeration.
std::set<PathKey> enumerate_walks(const std::vector<Triple>& kg, const std::string& origin, std::size_t hops);

bool contains_triple(const std::vector<Triple>& kg, const Triple& t);

}  // namespace pathfuse::oracle
