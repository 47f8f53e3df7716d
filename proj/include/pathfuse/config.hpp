// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathfuse/answerer.hpp"
#include "pathfuse/evalkit.hpp"
#include "pathfuse/kg_backend.hpp"

namespace pathfuse {

/// Every tunable of the engine with its default.
struct EngineConfig {
    std::size_t max_depth = 3;
    std::size_t triple_count = 15;
    double temperature = 0.4;
    std::size_t relation_width = 7;
    std::size_t entity_width = 7;
    /// Defaults to entity_width when not set explicitly.
    std::optional<std::size_t> max_width;
    std::size_t result_limit = 200;
    int retries = 2;
    std::string model_name = "gpt-3.5-turbo";
    std::string sparql_endpoint;
    std::string chat_endpoint;
    std::size_t workers = 4;
    std::string name_predicate = "type.object.name";
    std::vector<std::string> denylist;
    bool limit_clause = true;
    MatchPolicy match = MatchPolicy::Lenient;
    bool resolve_by_name = false;
    std::size_t timeout_ms = 60'000;

    AnswerConfig answer_config() const;
    BackendConfig backend_config() const;
};

using KeyValues = std::map<std::string, std::string>;

/// Keys accepted in config files and their flag spellings: depth, triples,
/// temperature, width (sets relation_width, entity_width and max_width),
/// relation_width, entity_width, max_width, result_limit, retries, model,
/// endpoint, chat_endpoint, workers, name_predicate, denylist
/// (comma-separated prefixes, or "freebase-meta"), limit_clause, match
/// (lenient|strict), resolve_by_name, timeout_ms.
const std::vector<std::string>& config_keys();

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError.
KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

/// Applies `kv` over `base`. Throws ConfigError on unknown keys or bad values.
EngineConfig apply_config(EngineConfig base, const KeyValues& kv);

/// defaults < file < environment < flags. All three maps use config keys.
EngineConfig resolve_config(const KeyValues& file, const KeyValues& flags, const KeyValues& environment = {});

/// PATHFUSE_SPARQL_ENDPOINT and PATHFUSE_CHAT_ENDPOINT from the process
/// environment, as the endpoint and chat_endpoint keys.
KeyValues config_environment();

}  // namespace pathfuse
