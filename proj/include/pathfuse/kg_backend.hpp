// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pathfuse/core_model.hpp"

namespace pathfuse {

struct BackendConfig {
    /// SPARQL endpoint, e.g. "http://localhost:8890/sparql". Unused by the in-memory store.
    std::string endpoint_url;
    std::chrono::milliseconds timeout{30'000};
    /// Cap per query. Truncation is logged.
    std::size_t result_limit = 200;
    /// Relation-name prefixes dropped from relation searches. Empty by default.
    std::vector<std::string> denylist;
    /// Predicate holding human-readable names.
    std::string name_predicate = "type.object.name";
    /// When set, the SPARQL client sends "LIMIT <result_limit>" after the template text.
    bool append_limit_clause = true;

    /// Optional denylist for Freebase bookkeeping relations.
    static std::vector<std::string> freebase_meta_denylist();
};

/// Triple retrieval over a knowledge graph. Results are distinct, denylist
/// filtered and capped at result_limit. Safe for concurrent use.
class KnowledgeBackend {
public:
    explicit KnowledgeBackend(BackendConfig config);
    virtual ~KnowledgeBackend() = default;

    KnowledgeBackend(const KnowledgeBackend&) = delete;
    KnowledgeBackend& operator=(const KnowledgeBackend&) = delete;

    /// Relations r with (e, r, ?) in the graph.
    std::vector<RelationRef> head_relations(const EntityRef& e) const;
    /// Relations r with (?, r, e) in the graph.
    std::vector<RelationRef> tail_relations(const EntityRef& e) const;
    /// Entities t with (e, r, t).
    std::vector<EntityRef> tail_entities(const EntityRef& e, const RelationRef& r) const;
    /// Entities h with (h, r, e).
    std::vector<EntityRef> head_entities(const EntityRef& e, const RelationRef& r) const;

    /// `e` with its label filled from the name predicate (id when unnamed). Cached.
    EntityRef resolve_label(const EntityRef& e) const;

    /// Exact-name lookup, used only when resolve-by-name is switched on.
    virtual std::optional<EntityRef> find_by_label(std::string_view label) const;

    /// Number of queries issued to the underlying store (cache hits excluded).
    std::size_t query_count() const noexcept { return queries_.load(); }

    const BackendConfig& config() const noexcept { return config_; }

protected:
    virtual std::vector<std::string> fetch_head_relations(const std::string& id) const = 0;
    virtual std::vector<std::string> fetch_tail_relations(const std::string& id) const = 0;
    virtual std::vector<EntityRef> fetch_tail_entities(const std::string& id,
                                                       const std::string& relation) const = 0;
    virtual std::vector<EntityRef> fetch_head_entities(const std::string& id,
                                                       const std::string& relation) const = 0;
    virtual std::optional<std::string> fetch_label(const std::string& id) const = 0;

private:
    std::vector<RelationRef> finish_relations(std::vector<std::string> raw, std::string_view what) const;
    std::vector<EntityRef> finish_entities(std::vector<EntityRef> raw, std::string_view what) const;

    BackendConfig config_;
    mutable std::atomic<std::size_t> queries_{0};
    mutable std::shared_mutex label_mutex_;
    mutable std::unordered_map<std::string, std::string> label_cache_;
};

/// Deterministic store backed by in-process indices. Results are sorted by id.
class InMemoryBackend final : public KnowledgeBackend {
public:
    explicit InMemoryBackend(std::span<const Triple> triples,
                             std::unordered_map<std::string, std::string> labels = {},
                             BackendConfig config = {});

    /// Loads "head<TAB>relation<TAB>tail" lines and optional "id<TAB>label" lines.
    /// Blank lines and lines starting with '#' are skipped. Throws std::runtime_error
    /// naming the file and line on bad input.
    static std::unique_ptr<InMemoryBackend> load(const std::string& triples_path,
                                const std::optional<std::string>& labels_path = std::nullopt,
                                BackendConfig config = {});

    bool contains(const Triple& t) const;
    std::size_t size() const noexcept { return size_; }
    /// Every stored triple in (head, relation, tail) order.
    std::vector<Triple> triples() const;

    std::optional<EntityRef> find_by_label(std::string_view label) const override;

protected:
    std::vector<std::string> fetch_head_relations(const std::string& id) const override;
    std::vector<std::string> fetch_tail_relations(const std::string& id) const override;
    std::vector<EntityRef> fetch_tail_entities(const std::string& id,
                                               const std::string& relation) const override;
    std::vector<EntityRef> fetch_head_entities(const std::string& id,
                                               const std::string& relation) const override;
    std::optional<std::string> fetch_label(const std::string& id) const override;

private:
    using Index = std::unordered_map<std::string, std::unordered_map<std::string, std::vector<std::string>>>;

    Index by_head_;  // head -> relation -> sorted tails
    Index by_tail_;  // tail -> relation -> sorted heads
    std::unordered_map<std::string, std::string> labels_;
    std::size_t size_ = 0;
};

enum class SparqlTemplate { HeadRelation, TailRelation, HeadEntity, TailEntity };

std::string_view to_string(SparqlTemplate t) noexcept;
std::optional<SparqlTemplate> sparql_template_from_string(std::string_view name) noexcept;

/// True when `id` can be spliced after "ns:" without escaping.
bool is_valid_binding(std::string_view id) noexcept;

/// Query text with the %s slots filled in template order:
///   HeadRelation {entity}, TailRelation {entity},
///   HeadEntity {entity, relation}, TailEntity {relation, entity}.
/// Throws BadBinding on arity mismatch or unsafe identifiers.
std::string render_sparql(SparqlTemplate t, std::span<const std::string> bindings);

/// Name lookup query for `predicate` (not one of the four retrieval templates).
std::string render_label_query(std::string_view entity_id, std::string_view predicate);

/// SPARQL 1.1 protocol client (HTTP GET, JSON results). One retry on
/// transport failure or 5xx, then BackendUnavailable.
class SparqlBackend final : public KnowledgeBackend {
public:
    explicit SparqlBackend(BackendConfig config);

    /// Wire text for a template: render_sparql plus the optional LIMIT clause.
    std::string wire_query(SparqlTemplate t, std::span<const std::string> bindings) const;

protected:
    std::vector<std::string> fetch_head_relations(const std::string& id) const override;
    std::vector<std::string> fetch_tail_relations(const std::string& id) const override;
    std::vector<EntityRef> fetch_tail_entities(const std::string& id,
                                               const std::string& relation) const override;
    std::vector<EntityRef> fetch_head_entities(const std::string& id,
                                               const std::string& relation) const override;
    std::optional<std::string> fetch_label(const std::string& id) const override;

private:
    struct Binding {
        std::string value;
        bool is_uri;
        std::string lang;
    };
    std::vector<Binding> select(const std::string& query, const std::string& variable) const;
    std::vector<std::string> relation_names(const std::string& query) const;
    std::vector<EntityRef> entity_refs(const std::string& query) const;

    std::string scheme_host_port_;
    std::string path_;
};

}  // namespace pathfuse
