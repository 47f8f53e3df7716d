// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/prompt_kind.hpp"

namespace pathfuse {

std::string_view to_string(PromptKind kind) noexcept {
    switch (kind) {
        case PromptKind::IPG: return "IPG";
        case PromptKind::RelationExploration: return "RelationExploration";
        case PromptKind::EntityExploration: return "EntityExploration";
        case PromptKind::Evaluation: return "Evaluation";
        case PromptKind::CoT: return "CoT";
        case PromptKind::IO: return "IO";
    }
    return "?";
}

std::optional<PromptKind> prompt_kind_from_string(std::string_view name) noexcept {
    for (auto k : kAllPromptKinds) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

}  // namespace pathfuse
