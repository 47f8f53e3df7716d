// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pathfuse {

/// A knowledge-graph node. Identity is the machine id; the label is for display only.
class EntityRef {
public:
    explicit EntityRef(std::string id, std::optional<std::string> label = std::nullopt);

    const std::string& id() const noexcept { return id_; }
    const std::optional<std::string>& label() const noexcept { return label_; }

    /// Label when present, id otherwise.
    const std::string& display() const noexcept { return label_ ? *label_ : id_; }

    EntityRef with_label(std::string label) const { return EntityRef(id_, std::move(label)); }

    friend bool operator==(const EntityRef& a, const EntityRef& b) noexcept { return a.id_ == b.id_; }
    friend std::strong_ordering operator<=>(const EntityRef& a, const EntityRef& b) noexcept {
        return a.id_ <=> b.id_;
    }

private:
    std::string id_;
    std::optional<std::string> label_;
};

class RelationRef {
public:
    explicit RelationRef(std::string name);

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const RelationRef&, const RelationRef&) = default;
    friend std::strong_ordering operator<=>(const RelationRef&, const RelationRef&) = default;

private:
    std::string name_;
};

struct Triple {
    EntityRef head;
    RelationRef relation;
    EntityRef tail;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class Direction { Forward, Backward };

/// Arrow glyphs used when rendering paths. Prompts that describe "->"/"<-"
/// get the ASCII spelling.
enum class ArrowStyle { Unicode, Ascii };

std::string_view arrow(Direction d, ArrowStyle style = ArrowStyle::Unicode) noexcept;

struct PathStep {
    Direction direction;
    RelationRef relation;
    EntityRef entity;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Where a path came from: the agent's own knowledge or the knowledge graph.
enum class PathSource { Internal, External };

/// origin (dir relation dir entity)*. A Backward step "X <- r <- Y" stands
/// for the triple (Y, r, X); a Forward step "X -> r -> Y" for (X, r, Y).
class ReasoningPath {
public:
    explicit ReasoningPath(EntityRef origin, std::vector<PathStep> steps = {},
                           PathSource source = PathSource::External);

    const EntityRef& origin() const noexcept { return origin_; }
    const std::vector<PathStep>& steps() const noexcept { return steps_; }
    PathSource source() const noexcept { return source_; }
    std::size_t hops() const noexcept { return steps_.size(); }

    /// Last entity of the path (origin when the path has no steps).
    const EntityRef& tail_entity() const noexcept;

    /// Every entity position in order, origin first.
    std::vector<EntityRef> entities() const;

    bool contains(const EntityRef& e) const noexcept;

    ReasoningPath appended(PathStep step) const;
    /// New path starting at `e`, joined to the old origin by `direction r`.
    ReasoningPath prepended(EntityRef e, Direction direction, RelationRef r) const;

    friend bool operator==(const ReasoningPath&, const ReasoningPath&) = default;

private:
    EntityRef origin_;
    std::vector<PathStep> steps_;
    PathSource source_;
};

/// Label-preferred arrow text, e.g. "A → r → B ← s ← C".
std::string render_path(const ReasoningPath& path, ArrowStyle style = ArrowStyle::Unicode);

/// Inverse of render_path. Accepts both arrow spellings and loose whitespace.
/// Entities come back with id set to the rendered token and no label.
/// Throws MalformedPath.
ReasoningPath parse_path(std::string_view text, PathSource source = PathSource::External);

/// One explored subgraph per topic entity: the union of its reasoning paths.
/// Whole-path duplicates are dropped on insert.
class Subgraph {
public:
    explicit Subgraph(EntityRef topic);
    Subgraph(EntityRef topic, std::vector<ReasoningPath> paths);

    const EntityRef& topic() const noexcept { return topic_; }
    const std::vector<ReasoningPath>& paths() const noexcept { return paths_; }

    /// Max hop count over paths (the exploration depth reached).
    std::size_t round() const noexcept;

    /// Copy with `path` added; unchanged when an equal path is already present.
    Subgraph with_path(ReasoningPath path) const;

private:
    void insert(ReasoningPath path);

    EntityRef topic_;
    std::vector<ReasoningPath> paths_;
};

struct TraversedTriple {
    Triple triple;
    Direction direction;

    friend bool operator==(const TraversedTriple&, const TraversedTriple&) = default;
    friend auto operator<=>(const TraversedTriple&, const TraversedTriple&) = default;
};

/// Underlying KG triples of every step in the subgraph, deduplicated.
std::set<TraversedTriple> subgraph_triples(const Subgraph& g);

/// Triple denoted by stepping from `from` along `step`.
Triple step_triple(const EntityRef& from, const PathStep& step);

}  // namespace pathfuse
