// SPDX-License-Identifier: Apache-2.0

#include "loose_fields.hpp"

#include <cstdint>

#include "text_util.hpp"

namespace pathfuse::loose {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_word(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::optional<std::uint32_t> hex4(std::string_view s, std::size_t pos) {
    if (pos + 4 > s.size()) return std::nullopt;
    std::uint32_t v = 0;
    for (std::size_t k = pos; k < pos + 4; ++k) {
        const char c = s[k];
        v <<= 4;
        if (c >= '0' && c <= '9') v |= std::uint32_t(c - '0');
        else if (c >= 'a' && c <= 'f') v |= std::uint32_t(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= std::uint32_t(c - 'A' + 10);
        else return std::nullopt;
    }
    return v;
}

/// Parses a quoted string starting at s[pos] (the quote). Advances pos past
/// the closing quote. nullopt when unterminated.
std::optional<std::string> quoted(std::string_view s, std::size_t& pos) {
    const char q = s[pos];
    std::string out;
    std::size_t i = pos + 1;
    while (i < s.size()) {
        const char c = s[i];
        if (c == q) {
            pos = i + 1;
            return out;
        }
        if (c == '\\' && i + 1 < s.size()) {
            const char e = s[i + 1];
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    if (auto v = hex4(s, i + 2)) {
                        append_utf8(out, *v);
                        i += 6;
                        continue;
                    }
                    out += 'u';
                    break;
                }
                default: out += e; break;
            }
            i += 2;
            continue;
        }
        out += c;
        ++i;
    }
    return std::nullopt;
}

std::optional<std::vector<std::string>> array(std::string_view s, std::size_t& pos) {
    std::vector<std::string> items;
    std::size_t i = pos + 1;  // past '['
    std::string bare;
    bool have_item = false;
    auto flush_bare = [&] {
        auto t = text_util::trim(bare);
        if (!t.empty()) items.emplace_back(t);
        bare.clear();
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == ']') {
            if (!have_item) flush_bare();
            pos = i + 1;
            return items;
        }
        if (c == ',') {
            if (!have_item) flush_bare();
            have_item = false;
            ++i;
            continue;
        }
        if ((c == '"' || c == '\'') && !have_item && text_util::trim(bare).empty()) {
            std::size_t p = i;
            auto str = quoted(s, p);
            if (!str) return std::nullopt;
            items.push_back(std::string(text_util::trim(*str)));
            have_item = true;
            bare.clear();
            i = p;
            continue;
        }
        if (!have_item) bare += c;
        ++i;
    }
    return std::nullopt;
}

std::optional<Value> value_at(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    if (pos >= s.size()) return std::nullopt;
    Value v;
    const char c = s[pos];
    if (c == '"' || c == '\'') {
        auto str = quoted(s, pos);
        if (!str) return std::nullopt;
        v.kind = Value::Kind::Quoted;
        v.scalar = std::move(*str);
        return v;
    }
    if (c == '[') {
        auto items = array(s, pos);
        if (!items) return std::nullopt;
        v.kind = Value::Kind::Array;
        v.items = std::move(*items);
        return v;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != ',' && s[end] != '}' && s[end] != '\n') ++end;
    auto bare = text_util::trim(s.substr(pos, end - pos));
    if (bare.empty()) return std::nullopt;
    v.kind = Value::Kind::Bare;
    v.scalar = std::string(bare);
    return v;
}

}  // namespace

std::optional<Value> find_field(std::string_view text, std::string_view key) {
    if (key.empty()) return std::nullopt;
    const std::string lowered = text_util::to_lower(text);
    const std::string lkey = text_util::to_lower(key);
    std::size_t from = 0;
    while (true) {
        const auto at = lowered.find(lkey, from);
        if (at == std::string::npos) return std::nullopt;
        from = at + 1;
        // Whole-word key only.
        if (at > 0 && is_word(text[at - 1])) continue;
        std::size_t p = at + lkey.size();
        if (p < text.size() && is_word(text[p])) continue;
        if (p < text.size() && (text[p] == '"' || text[p] == '\'')) ++p;
        while (p < text.size() && is_space(text[p])) ++p;
        if (p >= text.size() || text[p] != ':') continue;
        if (auto v = value_at(text, p + 1)) return v;
    }
}

}  // namespace pathfuse::loose
