// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/scripted_agent.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace pathfuse {

ScriptedAgent::ScriptedAgent(std::vector<ScriptEntry> script) : script_(std::move(script)) {}

namespace {
ScriptEntry entry_from_json(const nlohmann::json& j) {
    ScriptEntry e;
    const auto kind = j.value("kind", std::string("*"));
    if (kind != "*") {
        e.kind = prompt_kind_from_string(kind);
        if (!e.kind) throw ScriptMismatch("unknown prompt kind '" + kind + "' in script");
    }
    if (j.contains("contains")) e.contains = j.at("contains").get<std::string>();
    e.response = j.at("response").get<std::string>();
    return e;
}
}  // namespace

std::vector<ScriptEntry> ScriptedAgent::load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScriptMismatch("cannot open script " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<ScriptEntry> out;
    try {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '[') {
            for (const auto& j : nlohmann::json::parse(text)) out.push_back(entry_from_json(j));
        } else {
            for (auto line : text_util::split_lines(text)) {
                if (text_util::trim(line).empty()) continue;
                out.push_back(entry_from_json(nlohmann::json::parse(line)));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ScriptMismatch("bad script " + path + ": " + e.what());
    }
    return out;
}

std::string ScriptedAgent::complete(const AgentRequest& request) {
    std::lock_guard lock(mutex_);
    if (next_ >= script_.size()) {
        throw ScriptMismatch("script exhausted after " + std::to_string(next_) + " calls; unexpected " +
                             std::string(to_string(request.kind)) + " prompt");
    }
    const auto& entry = script_[next_];
    if (entry.kind && *entry.kind != request.kind) {
        throw ScriptMismatch("entry " + std::to_string(next_) + " expects " +
                             std::string(to_string(*entry.kind)) + ", got " +
                             std::string(to_string(request.kind)));
    }
    if (entry.contains && request.prompt.find(*entry.contains) == std::string::npos) {
        throw ScriptMismatch("entry " + std::to_string(next_) + " expects prompt containing '" +
                             *entry.contains + "'");
    }
    ++next_;
    return entry.response;
}

std::size_t ScriptedAgent::consumed() const {
    std::lock_guard lock(mutex_);
    return next_;
}

std::size_t ScriptedAgent::remaining() const {
    std::lock_guard lock(mutex_);
    return script_.size() - next_;
}

}  // namespace pathfuse
