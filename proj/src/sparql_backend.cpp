// SPDX-License-Identifier: Apache-2.0

#include <optional>
#include <string>

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "pathfuse/errors.hpp"
#include "pathfuse/kg_backend.hpp"
#include "url.hpp"

namespace pathfuse {

namespace {
constexpr std::string_view kFreebaseNs = "http://rdf.freebase.com/ns/";
}

SparqlBackend::SparqlBackend(BackendConfig config) : KnowledgeBackend(std::move(config)) {
    auto url = parse_url(this->config().endpoint_url);
    scheme_host_port_ = url.scheme_host_port();
    path_ = url.path.empty() ? "/" : url.path;
}

std::string SparqlBackend::wire_query(SparqlTemplate t, std::span<const std::string> bindings) const {
    auto q = render_sparql(t, bindings);
    if (config().append_limit_clause) q += "LIMIT " + std::to_string(config().result_limit) + "\n";
    return q;
}

std::vector<SparqlBackend::Binding> SparqlBackend::select(const std::string& query,
                                                          const std::string& variable) const {
    httplib::Client client(scheme_host_port_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config().timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config().timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());

    const httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
    const std::string target = path_ + "?query=" + httplib::detail::encode_query_param(query) +
                               "&format=" + httplib::detail::encode_query_param("application/sparql-results+json");

    std::string failure;
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto res = client.Get(target, headers);
        if (!res) {
            failure = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            failure = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw QueryRejected("HTTP " + std::to_string(res->status) + ": " + res->body);
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw QueryRejected(std::string("unparseable result body: ") + e.what());
        }
        std::vector<Binding> out;
        try {
            for (const auto& row : doc.at("results").at("bindings")) {
                if (!row.contains(variable)) continue;
                const auto& cell = row.at(variable);
                out.push_back(Binding{cell.at("value").get<std::string>(),
                                      cell.value("type", "") == "uri",
                                      cell.value("xml:lang", "")});
            }
        } catch (const nlohmann::json::exception& e) {
            throw QueryRejected(std::string("unexpected result shape: ") + e.what());
        }
        return out;
    }
    throw BackendUnavailable(config().endpoint_url + ": " + failure);
}

std::vector<std::string> SparqlBackend::relation_names(const std::string& query) const {
    std::vector<std::string> out;
    for (auto& b : select(query, "relation")) {
        // Only relations addressable as ns:<name> can be queried further.
        if (b.is_uri && b.value.starts_with(kFreebaseNs)) {
            out.push_back(b.value.substr(kFreebaseNs.size()));
        }
    }
    return out;
}

std::vector<EntityRef> SparqlBackend::entity_refs(const std::string& query) const {
    std::vector<EntityRef> out;
    for (auto& b : select(query, "Entity")) {
        if (b.value.empty()) continue;
        if (b.is_uri) {
            if (b.value.starts_with(kFreebaseNs)) out.emplace_back(b.value.substr(kFreebaseNs.size()));
            else out.emplace_back(b.value);
        } else {
            out.emplace_back(b.value, b.value);  // literal: the value is its own name
        }
    }
    return out;
}

std::vector<std::string> SparqlBackend::fetch_head_relations(const std::string& id) const {
    if (!is_valid_binding(id)) return {};
    const std::string b[] = {id};
    return relation_names(wire_query(SparqlTemplate::HeadRelation, b));
}

std::vector<std::string> SparqlBackend::fetch_tail_relations(const std::string& id) const {
    if (!is_valid_binding(id)) return {};
    const std::string b[] = {id};
    return relation_names(wire_query(SparqlTemplate::TailRelation, b));
}

std::vector<EntityRef> SparqlBackend::fetch_tail_entities(const std::string& id,
                                                          const std::string& relation) const {
    if (!is_valid_binding(id)) return {};
    const std::string b[] = {id, relation};
    return entity_refs(wire_query(SparqlTemplate::HeadEntity, b));
}

std::vector<EntityRef> SparqlBackend::fetch_head_entities(const std::string& id,
                                                          const std::string& relation) const {
    if (!is_valid_binding(id)) return {};
    const std::string b[] = {relation, id};
    return entity_refs(wire_query(SparqlTemplate::TailEntity, b));
}

std::optional<std::string> SparqlBackend::fetch_label(const std::string& id) const {
    if (!is_valid_binding(id)) return std::nullopt;
    auto rows = select(render_label_query(id, config().name_predicate), "name");
    std::optional<std::string> any;
    for (auto& b : rows) {
        if (b.lang == "en") return b.value;
        if (!any) any = b.value;
    }
    return any;
}

}  // namespace pathfuse
