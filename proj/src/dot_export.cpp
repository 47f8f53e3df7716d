// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/dot_export.hpp"

#include <map>
#include <set>

namespace pathfuse {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace

std::string export_dot(std::span<const Subgraph> subgraphs) {
    std::map<std::string, std::string> labels;  // id -> display
    std::set<std::string> topics;
    std::set<Triple> edges;

    auto note = [&](const EntityRef& e) {
        auto [it, inserted] = labels.emplace(e.id(), e.display());
        if (!inserted && e.label() && it->second == e.id()) it->second = *e.label();
    };

    for (const auto& g : subgraphs) {
        topics.insert(g.topic().id());
        note(g.topic());
        for (const auto& p : g.paths()) {
            for (const auto& e : p.entities()) note(e);
        }
        for (const auto& t : subgraph_triples(g)) edges.insert(t.triple);
    }

    std::map<std::string, std::size_t> index;
    std::string out = "digraph explored {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (const auto& [id, label] : labels) {
        const auto n = index.size();
        index.emplace(id, n);
        out += "  n" + std::to_string(n) + " [label=" + quote(label) + ", tooltip=" + quote(id);
        if (topics.count(id)) out += ", shape=box, style=bold";
        out += "];\n";
    }
    for (const auto& t : edges) {
        out += "  n" + std::to_string(index.at(t.head.id())) + " -> n" + std::to_string(index.at(t.tail.id())) +
               " [label=" + quote(t.relation.name()) + "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace pathfuse
