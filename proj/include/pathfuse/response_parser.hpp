// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathfuse/core_model.hpp"

namespace pathfuse {

/// Relations named in the response's "Relations" array that are also
/// candidates (case-insensitive), in response order, deduplicated, at most
/// `width`. Hallucinated names are dropped. Throws MalformedSelection when no
/// "Relations" value can be recovered.
std::vector<RelationRef> parse_relation_selection(std::string_view text,
                                                  std::span<const RelationRef> candidates,
                                                  std::size_t width);

/// As parse_relation_selection for the "Entities" array. Each name matches
/// candidate labels first and ids second; one name can select several
/// candidates sharing a label.
std::vector<EntityRef> parse_entity_selection(std::string_view text,
                                              std::span<const EntityRef> candidates,
                                              std::size_t width);

struct Evaluation {
    bool answerable = false;
    std::string response;
};

/// "Answerable" accepts True/true/"True"/False variants; "Response" is kept
/// verbatim. A missing field takes its default; both missing throws
/// MalformedSelection.
Evaluation parse_evaluation(std::string_view text);

struct IpgParse {
    std::vector<ReasoningPath> paths;  // source = Internal
    std::string answer;
    std::vector<Triple> triples;
    std::size_t dropped_paths = 0;
};

/// Reads the reasoning_path array and response string of an inference-paths
/// answer, falling back to the prose layout ("the final answer is: ... The
/// overall reasoning path ... is: ...") when no array is present. Also scans
/// "(entity, relation, entity)" lines. Unparseable paths are skipped one by
/// one. Throws MalformedSelection when neither layout yields anything.
IpgParse parse_ipg(std::string_view text);

}  // namespace pathfuse
