// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pathfuse::text_util {

std::string_view trim(std::string_view s) noexcept;

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

bool iequals(std::string_view a, std::string_view b) noexcept;

std::vector<std::string_view> split_lines(std::string_view s);

std::string replace_all(std::string s, std::string_view from, std::string_view to);

}  // namespace pathfuse::text_util
