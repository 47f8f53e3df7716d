// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/kg_backend.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "pathfuse/errors.hpp"
#include "text_util.hpp"

namespace pathfuse {

std::vector<std::string> BackendConfig::freebase_meta_denylist() {
    return {"type.", "common.", "kg.", "freebase.", "base.kwebbase.", "user.", "dataworld."};
}

KnowledgeBackend::KnowledgeBackend(BackendConfig config) : config_(std::move(config)) {
    if (config_.result_limit < 1) {
        throw std::invalid_argument("BackendConfig: result_limit must be >= 1");
    }
}

std::vector<RelationRef> KnowledgeBackend::finish_relations(std::vector<std::string> raw,
                                                           std::string_view what) const {
    std::vector<RelationRef> out;
    std::unordered_set<std::string> seen;
    for (auto& name : raw) {
        if (name.empty() || !seen.insert(name).second) continue;
        const bool denied = std::any_of(config_.denylist.begin(), config_.denylist.end(),
                                        [&](const std::string& p) { return name.starts_with(p); });
        if (denied) continue;
        out.emplace_back(std::move(name));
    }
    if (out.size() > config_.result_limit) {
        spdlog::info("{}: truncated {} relations to result_limit {}", what, out.size(),
                     config_.result_limit);
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(config_.result_limit), out.end());
    }
    return out;
}

std::vector<EntityRef> KnowledgeBackend::finish_entities(std::vector<EntityRef> raw,
                                                         std::string_view what) const {
    std::vector<EntityRef> out;
    std::unordered_set<std::string> seen;
    for (auto& e : raw) {
        if (seen.insert(e.id()).second) out.push_back(std::move(e));
    }
    if (out.size() > config_.result_limit) {
        spdlog::info("{}: truncated {} entities to result_limit {}", what, out.size(),
                     config_.result_limit);
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(config_.result_limit), out.end());
    }
    return out;
}

std::vector<RelationRef> KnowledgeBackend::head_relations(const EntityRef& e) const {
    ++queries_;
    return finish_relations(fetch_head_relations(e.id()), "head_relations(" + e.id() + ")");
}

std::vector<RelationRef> KnowledgeBackend::tail_relations(const EntityRef& e) const {
    ++queries_;
    return finish_relations(fetch_tail_relations(e.id()), "tail_relations(" + e.id() + ")");
}

std::vector<EntityRef> KnowledgeBackend::tail_entities(const EntityRef& e, const RelationRef& r) const {
    ++queries_;
    return finish_entities(fetch_tail_entities(e.id(), r.name()), "tail_entities(" + e.id() + ")");
}

std::vector<EntityRef> KnowledgeBackend::head_entities(const EntityRef& e, const RelationRef& r) const {
    ++queries_;
    return finish_entities(fetch_head_entities(e.id(), r.name()), "head_entities(" + e.id() + ")");
}

EntityRef KnowledgeBackend::resolve_label(const EntityRef& e) const {
    {
        std::shared_lock lock(label_mutex_);
        if (auto it = label_cache_.find(e.id()); it != label_cache_.end()) {
            return EntityRef(e.id(), it->second);
        }
    }
    ++queries_;
    auto label = fetch_label(e.id());
    std::string resolved = (label && !label->empty()) ? *label : e.id();
    {
        std::unique_lock lock(label_mutex_);
        label_cache_.emplace(e.id(), resolved);
    }
    return EntityRef(e.id(), std::move(resolved));
}

std::optional<EntityRef> KnowledgeBackend::find_by_label(std::string_view) const {
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// In-memory store

InMemoryBackend::InMemoryBackend(std::span<const Triple> triples,
                                 std::unordered_map<std::string, std::string> labels,
                                 BackendConfig config)
    : KnowledgeBackend(std::move(config)), labels_(std::move(labels)) {
    for (const auto& t : triples) {
        by_head_[t.head.id()][t.relation.name()].push_back(t.tail.id());
        by_tail_[t.tail.id()][t.relation.name()].push_back(t.head.id());
        if (t.head.label()) labels_.try_emplace(t.head.id(), *t.head.label());
        if (t.tail.label()) labels_.try_emplace(t.tail.id(), *t.tail.label());
    }
    for (auto* index : {&by_head_, &by_tail_}) {
        for (auto& [_, rels] : *index) {
            for (auto& [_, ids] : rels) {
                std::sort(ids.begin(), ids.end());
                ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            }
        }
    }
    for (const auto& [_, rels] : by_head_) {
        for (const auto& [_, ids] : rels) size_ += ids.size();
    }
}

std::unique_ptr<InMemoryBackend> InMemoryBackend::load(const std::string& triples_path,
                                                       const std::optional<std::string>& labels_path,
                                                       BackendConfig config) {
    auto split_tabs = [](std::string_view line) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            fields.emplace_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        return fields;
    };

    std::ifstream in(triples_path);
    if (!in) throw std::runtime_error("cannot open triple file " + triples_path);
    std::vector<Triple> triples;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text_util::trim(line).empty() || line.front() == '#') continue;
        auto f = split_tabs(line);
        if (f.size() != 3 || f[0].empty() || f[1].empty() || f[2].empty()) {
            throw std::runtime_error(triples_path + ":" + std::to_string(lineno) +
                                     ": expected head<TAB>relation<TAB>tail");
        }
        triples.push_back(Triple{EntityRef(f[0]), RelationRef(f[1]), EntityRef(f[2])});
    }

    std::unordered_map<std::string, std::string> labels;
    if (labels_path) {
        std::ifstream lin(*labels_path);
        if (!lin) throw std::runtime_error("cannot open label file " + *labels_path);
        for (std::size_t lineno = 1; std::getline(lin, line); ++lineno) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (text_util::trim(line).empty() || line.front() == '#') continue;
            auto f = split_tabs(line);
            if (f.size() != 2 || f[0].empty() || f[1].empty()) {
                throw std::runtime_error(*labels_path + ":" + std::to_string(lineno) +
                                         ": expected id<TAB>label");
            }
            labels[f[0]] = f[1];
        }
    }
    return std::make_unique<InMemoryBackend>(triples, std::move(labels), std::move(config));
}

bool InMemoryBackend::contains(const Triple& t) const {
    auto h = by_head_.find(t.head.id());
    if (h == by_head_.end()) return false;
    auto r = h->second.find(t.relation.name());
    if (r == h->second.end()) return false;
    return std::binary_search(r->second.begin(), r->second.end(), t.tail.id());
}

std::vector<Triple> InMemoryBackend::triples() const {
    std::vector<Triple> out;
    out.reserve(size_);
    for (const auto& [head, rels] : by_head_) {
        for (const auto& [rel, tails] : rels) {
            for (const auto& tail : tails) {
                out.push_back(Triple{EntityRef(head), RelationRef(rel), EntityRef(tail)});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<EntityRef> InMemoryBackend::find_by_label(std::string_view label) const {
    std::optional<std::string> best;
    for (const auto& [id, name] : labels_) {
        if (text_util::iequals(name, label) && (!best || id < *best)) best = id;
    }
    if (!best) return std::nullopt;
    return EntityRef(*best, labels_.at(*best));
}

namespace {
std::vector<std::string> sorted_keys(
    const std::unordered_map<std::string, std::vector<std::string>>& m) {
    std::vector<std::string> out;
    out.reserve(m.size());
    for (const auto& [k, _] : m) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

std::vector<std::string> InMemoryBackend::fetch_head_relations(const std::string& id) const {
    auto it = by_head_.find(id);
    return it == by_head_.end() ? std::vector<std::string>{} : sorted_keys(it->second);
}

std::vector<std::string> InMemoryBackend::fetch_tail_relations(const std::string& id) const {
    auto it = by_tail_.find(id);
    return it == by_tail_.end() ? std::vector<std::string>{} : sorted_keys(it->second);
}

std::vector<EntityRef> InMemoryBackend::fetch_tail_entities(const std::string& id,
                                                            const std::string& relation) const {
    std::vector<EntityRef> out;
    if (auto h = by_head_.find(id); h != by_head_.end()) {
        if (auto r = h->second.find(relation); r != h->second.end()) {
            for (const auto& t : r->second) out.emplace_back(t);
        }
    }
    return out;
}

std::vector<EntityRef> InMemoryBackend::fetch_head_entities(const std::string& id,
                                                            const std::string& relation) const {
    std::vector<EntityRef> out;
    if (auto t = by_tail_.find(id); t != by_tail_.end()) {
        if (auto r = t->second.find(relation); r != t->second.end()) {
            for (const auto& h : r->second) out.emplace_back(h);
        }
    }
    return out;
}

std::optional<std::string> InMemoryBackend::fetch_label(const std::string& id) const {
    if (auto it = labels_.find(id); it != labels_.end()) return it->second;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// SPARQL templates

namespace {

constexpr std::string_view kHeadRelation =
    "PREFIX ns: <http://rdf.freebase.com/ns/>\n"
    "SELECT DISTINCT ?relation\n"
    "WHERE {\n"
    "ns:%s ?relation ?tail .\n"
    "}\n";

constexpr std::string_view kTailRelation =
    "PREFIX ns: <http://rdf.freebase.com/ns/>\n"
    "SELECT DISTINCT ?relation\n"
    "WHERE {\n"
    "?head ?relation ns:%s .\n"
    "}\n";

constexpr std::string_view kHeadEntity =
    "PREFIX ns: <http://rdf.freebase.com/ns/>\n"
    "SELECT DISTINCT ?Entity\n"
    "WHERE {\n"
    "ns:%s ns:%s ?Entity .\n"
    "}\n";

constexpr std::string_view kTailEntity =
    "PREFIX ns: <http://rdf.freebase.com/ns/>\n"
    "SELECT DISTINCT ?Entity\n"
    "WHERE {\n"
    "?Entity ns:%s ns:%s .\n"
    "}\n";

constexpr std::string_view kLabel =
    "PREFIX ns: <http://rdf.freebase.com/ns/>\n"
    "SELECT DISTINCT ?name\n"
    "WHERE {\n"
    "ns:%s ns:%s ?name .\n"
    "}\n";

std::string substitute(std::string_view tmpl, std::span<const std::string> bindings) {
    std::string out;
    std::size_t next = 0;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] == '%' && i + 1 < tmpl.size() && tmpl[i + 1] == 's') {
            if (next >= bindings.size()) throw BadBinding("too few bindings");
            if (!is_valid_binding(bindings[next])) {
                throw BadBinding("unsafe identifier '" + bindings[next] + "'");
            }
            out += bindings[next++];
            ++i;
        } else {
            out += tmpl[i];
        }
    }
    if (next != bindings.size()) throw BadBinding("too many bindings");
    return out;
}

}  // namespace

std::string_view to_string(SparqlTemplate t) noexcept {
    switch (t) {
        case SparqlTemplate::HeadRelation: return "head_relation";
        case SparqlTemplate::TailRelation: return "tail_relation";
        case SparqlTemplate::HeadEntity: return "head_entity";
        case SparqlTemplate::TailEntity: return "tail_entity";
    }
    return "?";
}

std::optional<SparqlTemplate> sparql_template_from_string(std::string_view name) noexcept {
    for (auto t : {SparqlTemplate::HeadRelation, SparqlTemplate::TailRelation,
                   SparqlTemplate::HeadEntity, SparqlTemplate::TailEntity}) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

bool is_valid_binding(std::string_view id) noexcept {
    if (id.empty()) return false;
    for (unsigned char c : id) {
        if (c <= 0x20 || c == 0x7f) return false;
        switch (c) {
            case '"': case '\'': case '`': case '\\':
            case '<': case '>': case '{': case '}':
                return false;
            default: break;
        }
    }
    return true;
}

std::string render_sparql(SparqlTemplate t, std::span<const std::string> bindings) {
    switch (t) {
        case SparqlTemplate::HeadRelation: return substitute(kHeadRelation, bindings);
        case SparqlTemplate::TailRelation: return substitute(kTailRelation, bindings);
        case SparqlTemplate::HeadEntity: return substitute(kHeadEntity, bindings);
        case SparqlTemplate::TailEntity: return substitute(kTailEntity, bindings);
    }
    throw BadBinding("unknown template");
}

std::string render_label_query(std::string_view entity_id, std::string_view predicate) {
    const std::string b[] = {std::string(entity_id), std::string(predicate)};
    return substitute(kLabel, b);
}

}  // namespace pathfuse
