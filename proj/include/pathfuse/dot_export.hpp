// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>

#include "pathfuse/core_model.hpp"

namespace pathfuse {

/// Graphviz digraph of the explored subgraphs: one node per entity (sorted by
/// id, labelled with the display name, topic entities drawn as boxes) and one
/// edge per underlying triple, head to tail, labelled with the relation.
/// Byte-identical for identical input.
std::string export_dot(std::span<const Subgraph> subgraphs);

}  // namespace pathfuse
