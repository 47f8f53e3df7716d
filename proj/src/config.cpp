// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pathfuse/errors.hpp"
#include "text_util.hpp"

namespace pathfuse {

AnswerConfig EngineConfig::answer_config() const {
    AnswerConfig c;
    c.max_depth = max_depth;
    c.triple_count = triple_count;
    c.explorer.relation_width = relation_width;
    c.explorer.entity_width = entity_width;
    c.explorer.max_width = max_width.value_or(entity_width);
    c.agent.model_name = model_name;
    c.agent.temperature = temperature;
    c.agent.max_retries_on_malformed = retries;
    c.agent.timeout = std::chrono::milliseconds(timeout_ms);
    c.resolve_topic_by_name = resolve_by_name;
    return c;
}

BackendConfig EngineConfig::backend_config() const {
    BackendConfig b;
    b.endpoint_url = sparql_endpoint;
    b.timeout = std::chrono::milliseconds(timeout_ms);
    b.result_limit = result_limit;
    b.denylist = denylist;
    b.name_predicate = name_predicate;
    b.append_limit_clause = limit_clause;
    return b;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "depth",    "triples", "temperature",   "width",          "relation_width", "entity_width",
        "max_width", "result_limit", "retries", "model",          "endpoint",       "chat_endpoint",
        "workers",  "name_predicate", "denylist", "limit_clause", "match",          "resolve_by_name",
        "timeout_ms"};
    return keys;
}

namespace {

std::size_t to_size(const std::string& key, const std::string& v, std::size_t min = 0) {
    std::size_t out = 0;
    auto t = text_util::trim(v);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || p != t.data() + t.size() || out < min) {
        throw ConfigError(key + ": expected an integer >= " + std::to_string(min) + ", got '" + v + "'");
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    const auto l = text_util::to_lower(text_util::trim(v));
    if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
    if (l == "false" || l == "0" || l == "no" || l == "off") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> to_list(const std::string& v) {
    if (text_util::trim(v) == "freebase-meta") return BackendConfig::freebase_meta_denylist();
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = text_util::trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::size_t lineno = 0;
    for (auto raw : text_util::split_lines(text)) {
        ++lineno;
        auto line = raw.substr(0, raw.find('#'));
        line = text_util::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        auto key = std::string(text_util::trim(line.substr(0, eq)));
        auto value = std::string(text_util::trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

EngineConfig apply_config(EngineConfig c, const KeyValues& kv) {
    // "width" first so the specific keys can refine it.
    if (auto it = kv.find("width"); it != kv.end()) {
        const auto w = to_size("width", it->second, 1);
        c.relation_width = c.entity_width = w;
        c.max_width = w;
    }
    for (const auto& [key, v] : kv) {
        if (key == "width") continue;
        if (key == "depth") c.max_depth = to_size(key, v);
        else if (key == "triples") c.triple_count = to_size(key, v);
        else if (key == "temperature") {
            c.temperature = to_double(key, v);
            if (c.temperature < 0.0 || c.temperature > 1.0) throw ConfigError("temperature must lie in [0, 1]");
        } else if (key == "relation_width") c.relation_width = to_size(key, v, 1);
        else if (key == "entity_width") c.entity_width = to_size(key, v, 1);
        else if (key == "max_width") c.max_width = to_size(key, v, 1);
        else if (key == "result_limit") c.result_limit = to_size(key, v, 1);
        else if (key == "retries") c.retries = static_cast<int>(to_size(key, v));
        else if (key == "model") c.model_name = v;
        else if (key == "endpoint") c.sparql_endpoint = v;
        else if (key == "chat_endpoint") c.chat_endpoint = v;
        else if (key == "workers") c.workers = to_size(key, v, 1);
        else if (key == "name_predicate") c.name_predicate = v;
        else if (key == "denylist") c.denylist = to_list(v);
        else if (key == "limit_clause") c.limit_clause = to_bool(key, v);
        else if (key == "match") {
            const auto l = text_util::to_lower(v);
            if (l == "lenient") c.match = MatchPolicy::Lenient;
            else if (l == "strict") c.match = MatchPolicy::Strict;
            else throw ConfigError("match: expected lenient or strict, got '" + v + "'");
        } else if (key == "resolve_by_name") c.resolve_by_name = to_bool(key, v);
        else if (key == "timeout_ms") c.timeout_ms = to_size(key, v, 1);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

EngineConfig resolve_config(const KeyValues& file, const KeyValues& flags, const KeyValues& environment) {
    EngineConfig c = apply_config(EngineConfig{}, file);
    c = apply_config(std::move(c), environment);
    return apply_config(std::move(c), flags);
}

KeyValues config_environment() {
    KeyValues kv;
    if (const char* v = std::getenv("PATHFUSE_SPARQL_ENDPOINT"); v && *v) kv["endpoint"] = v;
    if (const char* v = std::getenv("PATHFUSE_CHAT_ENDPOINT"); v && *v) kv["chat_endpoint"] = v;
    return kv;
}

}  // namespace pathfuse
