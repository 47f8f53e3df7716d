// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/core_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "pathfuse/errors.hpp"
#include "text_util.hpp"

namespace pathfuse {

EntityRef::EntityRef(std::string id, std::optional<std::string> label)
    : id_(std::move(id)), label_(std::move(label)) {
    if (id_.empty()) {
        throw std::invalid_argument("EntityRef: empty id");
    }
    if (label_ && label_->empty()) {
        throw std::invalid_argument("EntityRef: empty label for " + id_);
    }
}

RelationRef::RelationRef(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw std::invalid_argument("RelationRef: empty name");
    }
}

std::string_view arrow(Direction d, ArrowStyle style) noexcept {
    if (style == ArrowStyle::Ascii) {
        return d == Direction::Forward ? "->" : "<-";
    }
    return d == Direction::Forward ? "→" : "←";
}

ReasoningPath::ReasoningPath(EntityRef origin, std::vector<PathStep> steps, PathSource source)
    : origin_(std::move(origin)), steps_(std::move(steps)), source_(source) {}

const EntityRef& ReasoningPath::tail_entity() const noexcept {
    return steps_.empty() ? origin_ : steps_.back().entity;
}

std::vector<EntityRef> ReasoningPath::entities() const {
    std::vector<EntityRef> out;
    out.reserve(steps_.size() + 1);
    out.push_back(origin_);
    for (const auto& s : steps_) out.push_back(s.entity);
    return out;
}

bool ReasoningPath::contains(const EntityRef& e) const noexcept {
    if (origin_ == e) return true;
    return std::any_of(steps_.begin(), steps_.end(),
                       [&](const PathStep& s) { return s.entity == e; });
}

ReasoningPath ReasoningPath::appended(PathStep step) const {
    auto steps = steps_;
    steps.push_back(std::move(step));
    return ReasoningPath(origin_, std::move(steps), source_);
}

ReasoningPath ReasoningPath::prepended(EntityRef e, Direction direction, RelationRef r) const {
    std::vector<PathStep> steps;
    steps.reserve(steps_.size() + 1);
    steps.push_back(PathStep{direction, std::move(r), origin_});
    steps.insert(steps.end(), steps_.begin(), steps_.end());
    return ReasoningPath(std::move(e), std::move(steps), source_);
}

std::string render_path(const ReasoningPath& path, ArrowStyle style) {
    std::string out = path.origin().display();
    for (const auto& step : path.steps()) {
        const auto a = arrow(step.direction, style);
        out += ' ';
        out += a;
        out += ' ';
        out += step.relation.name();
        out += ' ';
        out += a;
        out += ' ';
        out += step.entity.display();
    }
    return out;
}

namespace {

struct ArrowToken {
    std::size_t pos;
    std::size_t len;
    Direction direction;
};

std::vector<ArrowToken> find_arrows(std::string_view text) {
    static constexpr std::string_view kRight = "→";
    static constexpr std::string_view kLeft = "←";
    std::vector<ArrowToken> out;
    for (std::size_t i = 0; i < text.size();) {
        const auto rest = text.substr(i);
        if (rest.starts_with(kRight)) {
            out.push_back({i, kRight.size(), Direction::Forward});
            i += kRight.size();
        } else if (rest.starts_with(kLeft)) {
            out.push_back({i, kLeft.size(), Direction::Backward});
            i += kLeft.size();
        } else if (rest.starts_with("->")) {
            out.push_back({i, 2, Direction::Forward});
            i += 2;
        } else if (rest.starts_with("<-")) {
            out.push_back({i, 2, Direction::Backward});
            i += 2;
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace

ReasoningPath parse_path(std::string_view text, PathSource source) {
    const auto arrows = find_arrows(text);
    std::vector<std::string> segments;
    std::size_t start = 0;
    for (const auto& a : arrows) {
        segments.emplace_back(text_util::trim(text.substr(start, a.pos - start)));
        start = a.pos + a.len;
    }
    segments.emplace_back(text_util::trim(text.substr(start)));

    if (segments.front().empty()) {
        throw MalformedPath("path has no leading entity: '" + std::string(text) + "'");
    }
    if (arrows.size() % 2 != 0) {
        throw MalformedPath("entity/relation tokens do not alternate: '" + std::string(text) + "'");
    }
    std::vector<PathStep> steps;
    for (std::size_t k = 0; k < arrows.size(); k += 2) {
        const auto& relation = segments[k + 1];
        const auto& entity = segments[k + 2];
        if (relation.empty() || entity.empty()) {
            throw MalformedPath("empty token in '" + std::string(text) + "'");
        }
        if (arrows[k].direction != arrows[k + 1].direction) {
            throw MalformedPath("mixed arrow directions around '" + relation + "'");
        }
        steps.push_back(PathStep{arrows[k].direction, RelationRef(relation), EntityRef(entity)});
    }
    return ReasoningPath(EntityRef(segments.front()), std::move(steps), source);
}

Subgraph::Subgraph(EntityRef topic) : topic_(std::move(topic)) {}

Subgraph::Subgraph(EntityRef topic, std::vector<ReasoningPath> paths) : topic_(std::move(topic)) {
    for (auto& p : paths) insert(std::move(p));
}

std::size_t Subgraph::round() const noexcept {
    std::size_t r = 0;
    for (const auto& p : paths_) r = std::max(r, p.hops());
    return r;
}

Subgraph Subgraph::with_path(ReasoningPath path) const {
    Subgraph copy = *this;
    copy.insert(std::move(path));
    return copy;
}

void Subgraph::insert(ReasoningPath path) {
    if (!path.contains(topic_)) {
        throw std::invalid_argument("Subgraph: path does not touch topic " + topic_.id());
    }
    if (std::find(paths_.begin(), paths_.end(), path) == paths_.end()) {
        paths_.push_back(std::move(path));
    }
}

Triple step_triple(const EntityRef& from, const PathStep& step) {
    if (step.direction == Direction::Forward) {
        return Triple{from, step.relation, step.entity};
    }
    return Triple{step.entity, step.relation, from};
}

std::set<TraversedTriple> subgraph_triples(const Subgraph& g) {
    std::set<TraversedTriple> out;
    for (const auto& path : g.paths()) {
        const EntityRef* from = &path.origin();
        for (const auto& step : path.steps()) {
            out.insert(TraversedTriple{step_triple(*from, step), step.direction});
            from = &step.entity;
        }
    }
    return out;
}

}  // namespace pathfuse
