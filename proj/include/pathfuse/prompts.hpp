// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/core_model.hpp"
#include "pathfuse/prompt_kind.hpp"

namespace pathfuse {

using PromptBindings = std::map<std::string, std::string, std::less<>>;

/// Raw template text with $-slots, exactly as sent before substitution.
std::string_view prompt_template(PromptKind kind) noexcept;

/// Slot names a template requires, in order of first appearance.
std::vector<std::string> prompt_slots(PromptKind kind);

/// Substitutes every $slot in a single pass (bound values are never rescanned).
/// Throws MissingBinding when a slot has no binding.
///
/// Slots: IPG {tripleCount, question}; RelationExploration {question,
/// topicEntity, knowpath_str, relationList}; EntityExploration adds
/// entityList; Evaluation {subgraph, question}; CoT and IO {question}.
std::string render_prompt(PromptKind kind, const PromptBindings& bindings);

/// `"a", "b", "c"` - the list format used for $relationList and $entityList.
std::string format_name_list(std::span<const std::string> names);

/// Rendered paths joined by newlines ($knowpath_str, $subgraph).
std::string format_paths(std::span<const ReasoningPath> paths, ArrowStyle style = ArrowStyle::Unicode);

}  // namespace pathfuse
