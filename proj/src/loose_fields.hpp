// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathfuse::loose {

/// A field value recovered from model output that is only JSON-shaped.
struct Value {
    enum class Kind { Quoted, Array, Bare };
    Kind kind = Kind::Bare;
    std::string scalar;              // Quoted / Bare
    std::vector<std::string> items;  // Array, each item unquoted and trimmed
};

/// First parseable value of `key` anywhere in `text`. The key may be quoted
/// with ' or " or bare, and matches case-insensitively. Strings may use either
/// quote style; array items may be unquoted. Never throws.
std::optional<Value> find_field(std::string_view text, std::string_view key);

}  // namespace pathfuse::loose
