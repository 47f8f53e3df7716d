// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace pathfuse {

enum class PromptKind { IPG, RelationExploration, EntityExploration, Evaluation, CoT, IO };

inline constexpr std::array<PromptKind, 6> kAllPromptKinds = {
    PromptKind::IPG,        PromptKind::RelationExploration, PromptKind::EntityExploration,
    PromptKind::Evaluation, PromptKind::CoT,                 PromptKind::IO};

std::string_view to_string(PromptKind kind) noexcept;
std::optional<PromptKind> prompt_kind_from_string(std::string_view name) noexcept;

}  // namespace pathfuse
