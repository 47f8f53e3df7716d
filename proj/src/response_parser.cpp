// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/response_parser.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "loose_fields.hpp"
#include "pathfuse/errors.hpp"
#include "text_util.hpp"

namespace pathfuse {

namespace {

std::vector<std::string> field_items(std::string_view text, std::string_view key) {
    auto v = loose::find_field(text, key);
    if (!v) {
        throw MalformedSelection("no \"" + std::string(key) + "\" list in response");
    }
    if (v->kind == loose::Value::Kind::Array) return std::move(v->items);
    return {std::move(v->scalar)};
}

std::string strip_annotations(std::string s) {
    for (std::string_view note : {"(topic entity)", "(final answer)", "(answer)"}) {
        for (auto pos = text_util::to_lower(s).find(note); pos != std::string::npos;
             pos = text_util::to_lower(s).find(note)) {
            s.erase(pos, note.size());
        }
    }
    return s;
}

std::optional<ReasoningPath> salvage_path(std::string_view text) {
    try {
        return parse_path(strip_annotations(std::string(text)), PathSource::Internal);
    } catch (const MalformedPath&) {
        return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<Triple> triple_line(std::string_view line) {
    auto t = text_util::trim(line);
    // Leading bullets or numbering: "-", "*", "•", "3.", "3)".
    if (t.starts_with("•")) t.remove_prefix(std::string_view("•").size());
    else if (!t.empty() && (t.front() == '-' || t.front() == '*')) t.remove_prefix(1);
    else {
        std::size_t d = 0;
        while (d < t.size() && t[d] >= '0' && t[d] <= '9') ++d;
        if (d > 0 && d < t.size() && (t[d] == '.' || t[d] == ')')) t.remove_prefix(d + 1);
    }
    t = text_util::trim(t);
    while (!t.empty() && (t.back() == ',' || t.back() == '.' || t.back() == ';')) t.remove_suffix(1);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') return std::nullopt;
    t = t.substr(1, t.size() - 2);

    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = t.find(',', start);
        parts.push_back(text_util::trim(t.substr(start, comma == std::string_view::npos ? t.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() < 3) return std::nullopt;
    std::string tail(parts[2]);
    for (std::size_t k = 3; k < parts.size(); ++k) {
        tail += ", ";
        tail += parts[k];
    }
    tail = std::string(text_util::trim(tail));
    if (parts[0].empty() || parts[1].empty() || tail.empty()) return std::nullopt;
    return Triple{EntityRef(std::string(parts[0])), RelationRef(std::string(parts[1])),
                  EntityRef(tail)};
}

struct ProseAnswer {
    std::optional<std::string> answer;
    std::optional<std::string> path_text;
};

ProseAnswer prose_layout(std::string_view text) {
    ProseAnswer out;
    const auto lines = text_util::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto lower = text_util::to_lower(lines[i]);
        if (!out.answer) {
            if (auto at = lower.find("final answer is"); at != std::string::npos) {
                auto rest = text_util::trim(lines[i].substr(at + std::string_view("final answer is").size()));
                if (!rest.empty() && rest.front() == ':') rest = text_util::trim(rest.substr(1));
                if (rest.empty()) {
                    for (std::size_t j = i + 1; j < lines.size(); ++j) {
                        if (!text_util::trim(lines[j]).empty()) {
                            rest = text_util::trim(lines[j]);
                            break;
                        }
                    }
                }
                if (!rest.empty()) out.answer = std::string(rest);
                continue;
            }
        }
        if (!out.path_text && lower.find("reasoning path") != std::string::npos) {
            std::string joined;
            auto after = lines[i].substr(lines[i].rfind(':') == std::string_view::npos
                                             ? lines[i].size()
                                             : lines[i].rfind(':') + 1);
            if (!text_util::trim(after).empty()) joined = std::string(text_util::trim(after));
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                auto l = text_util::trim(lines[j]);
                if (l.empty()) {
                    if (joined.empty()) continue;
                    break;
                }
                if (!joined.empty()) joined += ' ';
                joined += l;
            }
            if (!joined.empty()) out.path_text = std::move(joined);
        }
    }
    return out;
}

}  // namespace

std::vector<RelationRef> parse_relation_selection(std::string_view text,
                                                  std::span<const RelationRef> candidates,
                                                  std::size_t width) {
    const auto names = field_items(text, "Relations");
    std::vector<RelationRef> out;
    for (const auto& name : names) {
        if (out.size() >= width) break;
        for (const auto& c : candidates) {
            if (text_util::iequals(c.name(), name) &&
                std::find(out.begin(), out.end(), c) == out.end()) {
                out.push_back(c);
                break;
            }
        }
    }
    return out;
}

std::vector<EntityRef> parse_entity_selection(std::string_view text,
                                              std::span<const EntityRef> candidates,
                                              std::size_t width) {
    const auto names = field_items(text, "Entities");
    std::vector<EntityRef> out;
    auto take = [&](const EntityRef& e) {
        if (out.size() < width && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    };
    for (const auto& name : names) {
        if (out.size() >= width) break;
        bool by_label = false;
        for (const auto& c : candidates) {
            if (c.label() && text_util::iequals(*c.label(), name)) {
                take(c);
                by_label = true;
            }
        }
        if (by_label) continue;
        for (const auto& c : candidates) {
            if (text_util::iequals(c.id(), name)) take(c);
        }
    }
    return out;
}

Evaluation parse_evaluation(std::string_view text) {
    auto answerable = loose::find_field(text, "Answerable");
    auto response = loose::find_field(text, "Response");

    std::optional<bool> flag;
    if (answerable && answerable->kind != loose::Value::Kind::Array) {
        auto v = text_util::to_lower(text_util::trim(answerable->scalar));
        if (v == "true" || v == "yes") flag = true;
        else if (v == "false" || v == "no") flag = false;
    }
    std::optional<std::string> body;
    if (response) {
        if (response->kind == loose::Value::Kind::Array) {
            std::string joined;
            for (const auto& item : response->items) {
                if (!joined.empty()) joined += ", ";
                joined += item;
            }
            body = std::move(joined);
        } else {
            body = std::move(response->scalar);
        }
    }
    if (!flag && !body) throw MalformedSelection("no Answerable/Response fields in evaluation");
    return Evaluation{flag.value_or(false), body.value_or("")};
}

IpgParse parse_ipg(std::string_view text) {
    IpgParse out;
    for (auto line : text_util::split_lines(text)) {
        try {
            if (auto t = triple_line(line)) out.triples.push_back(std::move(*t));
        } catch (const std::invalid_argument&) {
        }
    }

    if (auto field = loose::find_field(text, "reasoning_path")) {
        std::vector<std::string> entries = field->kind == loose::Value::Kind::Array
                                               ? std::move(field->items)
                                               : std::vector<std::string>{std::move(field->scalar)};
        for (const auto& entry : entries) {
            if (auto p = salvage_path(entry)) out.paths.push_back(std::move(*p));
            else ++out.dropped_paths;
        }
        if (auto r = loose::find_field(text, "response"); r && r->kind != loose::Value::Kind::Array) {
            out.answer = std::move(r->scalar);
        }
        return out;
    }

    auto prose = prose_layout(text);
    if (!prose.answer && !prose.path_text) {
        throw MalformedSelection("no reasoning_path in inference-paths response");
    }
    if (prose.answer) out.answer = std::move(*prose.answer);
    if (prose.path_text) {
        if (auto p = salvage_path(*prose.path_text)) out.paths.push_back(std::move(*p));
        else ++out.dropped_paths;
    }
    return out;
}

}  // namespace pathfuse
