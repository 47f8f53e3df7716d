// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pathfuse/answerer.hpp"
#include "pathfuse/config.hpp"
#include "pathfuse/dot_export.hpp"
#include "pathfuse/errors.hpp"
#include "pathfuse/evalkit.hpp"
#include "pathfuse/live_agent.hpp"
#include "pathfuse/outcome_json.hpp"
#include "pathfuse/scripted_agent.hpp"

namespace pathfuse {

namespace {

struct CommonFlags {
    std::string config_file;
    KeyValues flags;
    std::string scripted;
    std::string kg_file;
    std::string labels_file;
};

void add_common(CLI::App& cmd, CommonFlags& c) {
    auto kv = [&c, &cmd](const std::string& flag, const std::string& key, const std::string& help) {
        cmd.add_option_function<std::string>(flag, [&c, key](const std::string& v) { c.flags[key] = v; }, help);
    };
    cmd.add_option("--config", c.config_file, "key = value configuration file");
    kv("--depth", "depth", "maximum exploration depth D (default 3)");
    kv("--triples", "triples", "knowledge triples requested from the agent (default 15, 0 skips)");
    kv("--temperature", "temperature", "sampling temperature (default 0.4)");
    kv("--width", "width", "relation, entity and path width (default 7)");
    kv("--relation-width", "relation_width", "relations kept per selection");
    kv("--entity-width", "entity_width", "entities kept per selection");
    kv("--max-width", "max_width", "live paths per subgraph");
    kv("--result-limit", "result_limit", "cap per knowledge-graph query (default 200)");
    kv("--retries", "retries", "re-asks on malformed output (default 2)");
    kv("--endpoint", "endpoint", "SPARQL endpoint URL");
    kv("--chat-endpoint", "chat_endpoint", "chat-completion URL");
    kv("--model", "model", "model name sent to the chat endpoint");
    kv("--workers", "workers", "parallel questions in bench (default 4)");
    kv("--denylist", "denylist", "relation prefixes to drop, comma-separated, or freebase-meta");
    kv("--match", "match", "answer matching: lenient or strict");
    kv("--name-predicate", "name_predicate", "predicate holding entity names");
    cmd.add_flag_function("--resolve-by-name", [&c](std::int64_t) { c.flags["resolve_by_name"] = "true"; },
                          "look topic labels up in the graph when no ids are given");
    cmd.add_option("--scripted", c.scripted, "replay agent responses from a script file");
    cmd.add_option("--kg-file", c.kg_file, "in-memory triple file (head<TAB>relation<TAB>tail)");
    cmd.add_option("--labels", c.labels_file, "label file (id<TAB>label) for --kg-file");
}

EngineConfig load_engine_config(const CommonFlags& c) {
    KeyValues file;
    if (!c.config_file.empty()) file = load_config_file(c.config_file);
    return resolve_config(file, c.flags, config_environment());
}

std::unique_ptr<AgentGateway> make_agent(const CommonFlags& c, const EngineConfig& cfg) {
    if (!c.scripted.empty()) return std::make_unique<ScriptedAgent>(ScriptedAgent::load_script(c.scripted));
    if (cfg.chat_endpoint.empty()) {
        throw ConfigError("no agent: pass --scripted FILE or set --chat-endpoint / PATHFUSE_CHAT_ENDPOINT");
    }
    return std::make_unique<LiveAgent>(cfg.chat_endpoint, cfg.answer_config().agent);
}

std::unique_ptr<KnowledgeBackend> make_backend(const CommonFlags& c, const EngineConfig& cfg) {
    if (!c.kg_file.empty()) {
        std::optional<std::string> labels;
        if (!c.labels_file.empty()) labels = c.labels_file;
        try {
            return InMemoryBackend::load(c.kg_file, labels, cfg.backend_config());
        } catch (const std::runtime_error& e) {
            throw ConfigError(e.what());
        }
    }
    if (cfg.sparql_endpoint.empty()) {
        throw ConfigError("no knowledge graph: pass --kg-file FILE or set --endpoint / PATHFUSE_SPARQL_ENDPOINT");
    }
    return std::make_unique<SparqlBackend>(cfg.backend_config());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

TopicEntityMap parse_topics(const std::vector<std::string>& specs) {
    TopicEntityMap out;
    for (const auto& s : specs) {
        const auto eq = s.rfind('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
            throw ConfigError("--topic expects LABEL=ID, got '" + s + "'");
        }
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

int cmd_ask(const std::string& question, const std::vector<std::string>& topic_specs, const CommonFlags& c,
            const std::string& dot_path, const std::string& json_path, std::ostream& out, std::ostream& err) {
    const auto cfg = load_engine_config(c);
    const auto topics = parse_topics(topic_specs);
    auto agent = make_agent(c, cfg);
    auto backend = make_backend(c, cfg);

    const auto outcome = answer_question(question, topics, *agent, *backend, cfg.answer_config());

    out << "answer: " << outcome.answer_text << "\n";
    out << "source: " << to_string(outcome.source);
    if (outcome.answerable_round) out << " (round " << *outcome.answerable_round << ")";
    if (outcome.best_effort) out << " (best effort)";
    out << "\n";
    out << "paths:\n";
    for (const auto& g : outcome.final_subgraphs) {
        for (const auto& p : g.paths()) out << "  " << render_path(p) << "\n";
    }
    const auto& l = outcome.ledger;
    out << fmt::format("ledger: calls={} input_tokens={} total_tokens={} time={:.3f}s\n", l.call_count(),
                       l.input_tokens(), l.total_tokens(), std::chrono::duration<double>(l.wall_time()).count());
    for (const auto& w : outcome.warnings) err << "warning: " << w << "\n";
    for (const auto& e : outcome.errors) err << "error: " << e << "\n";

    if (!dot_path.empty()) write_file(dot_path, export_dot(outcome.final_subgraphs));
    if (!json_path.empty()) write_file(json_path, outcome_to_json(question, outcome).dump(2) + "\n");

    if (outcome.backend_unavailable) {
        err << "BackendUnavailable: answered from inference paths only\n";
        return kExitBackendUnavailable;
    }
    return kExitOk;
}

std::vector<std::size_t> parse_sweep(const std::string& spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--sweep-triples expects comma-separated integers, got '" + spec + "'");
        }
    }
    if (out.empty()) throw ConfigError("--sweep-triples is empty");
    return out;
}

int cmd_bench(const std::string& dataset_path, std::string dataset_id, const std::string& mode,
              const std::string& sweep, const std::string& out_dir, const std::string& dot_dir,
              const CommonFlags& c, std::ostream& out, std::ostream& err) {
    const auto cfg = load_engine_config(c);
    if (dataset_id.empty()) dataset_id = std::filesystem::path(dataset_path).stem().string();
    auto load = load_dataset(dataset_path, dataset_id);
    for (const auto& w : load.warnings) err << "warning: " << w << "\n";
    auto agent = make_agent(c, cfg);

    RunOptions options;
    options.workers = cfg.workers;
    options.policy = cfg.match;

    std::vector<EvalResult> results;
    if (mode == "io" || mode == "cot") {
        options.method = mode == "io" ? "IO" : "CoT";
        results.push_back(run_baseline(mode == "io" ? BaselineMode::IO : BaselineMode::CoT, load.records, *agent,
                                       cfg.answer_config(), options));
    } else if (mode == "full") {
        auto backend = make_backend(c, cfg);
        const auto counts = sweep.empty() ? std::vector<std::size_t>{cfg.triple_count} : parse_sweep(sweep);
        for (auto n : counts) {
            auto ac = cfg.answer_config();
            ac.triple_count = n;
            options.method = sweep.empty() ? "full" : "full(n=" + std::to_string(n) + ")";
            results.push_back(run_pipeline(load.records, *agent, *backend, ac, options));
        }
    } else {
        throw ConfigError("--mode must be full, io or cot, got '" + mode + "'");
    }

    std::vector<CostRow> rows;
    for (const auto& r : results) {
        if (r.cost) rows.push_back(*r.cost);
    }
    const auto hits_table = render_hits_table(results);
    const auto cost_table = rows.empty() ? std::string("(no records: cost table is empty)\n") : render_cost_table(rows);
    out << hits_table << "\n" << cost_table;

    for (const auto& r : results) {
        for (const auto& rec : r.records) {
            if (rec.error) err << "record " << rec.id << ": " << *rec.error << "\n";
        }
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto base = std::filesystem::path(out_dir);
        write_file((base / "hits.txt").string(), hits_table);
        write_file((base / "hits.csv").string(), render_hits_csv(results));
        write_file((base / "cost.txt").string(), cost_table);
        write_file((base / "cost.csv").string(), render_cost_csv(rows));
        nlohmann::json preds = nlohmann::json::array();
        for (const auto& r : results) {
            for (const auto& rec : r.records) {
                preds.push_back({{"method", r.method}, {"id", rec.id}, {"predicted", rec.predicted},
                                 {"hit", rec.hit}, {"llm_calls", rec.llm_calls}});
            }
        }
        write_file((base / "predictions.json").string(), preds.dump(2) + "\n");
    }
    if (!dot_dir.empty()) {
        std::filesystem::create_directories(dot_dir);
        for (const auto& r : results) {
            for (const auto& rec : r.records) {
                if (rec.subgraphs.empty()) continue;
                auto name = r.method + "_" + rec.id + ".dot";
                for (auto& ch : name) {
                    if (ch == '/' || ch == '\\' || ch == ' ' || ch == '(' || ch == ')' || ch == '=') ch = '_';
                }
                write_file((std::filesystem::path(dot_dir) / name).string(), export_dot(rec.subgraphs));
            }
        }
    }
    return kExitOk;
}

int cmd_export(const std::string& from, const std::string& dot_path, std::ostream& out) {
    std::ifstream in(from);
    if (!in) throw ConfigError("cannot open " + from);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(from + ": " + e.what());
    }
    std::vector<Subgraph> subgraphs;
    try {
        subgraphs = subgraphs_from_outcome_json(doc);
    } catch (const std::exception& e) {
        throw ConfigError(from + ": " + e.what());
    }
    const auto dot = export_dot(subgraphs);
    if (dot_path.empty() || dot_path == "-") out << dot;
    else write_file(dot_path, dot);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knowledge-graph question answering with agent-guided subgraph exploration", "pathfuse"};
    app.require_subcommand(1);

    CommonFlags ask_flags;
    std::string question, dot_path, json_path;
    std::vector<std::string> topics;
    auto* ask = app.add_subcommand("ask", "answer one question");
    ask->add_option("question", question, "natural-language question")->required();
    ask->add_option("--topic", topics, "topic entity as LABEL=ID (repeatable)");
    ask->add_option("--dot", dot_path, "write the explored subgraph as DOT");
    ask->add_option("--json", json_path, "write the full outcome as JSON");
    add_common(*ask, ask_flags);

    CommonFlags bench_flags;
    std::string dataset, dataset_id, mode = "full", sweep, out_dir, dot_dir;
    auto* bench = app.add_subcommand("bench", "score a dataset");
    bench->add_option("--dataset", dataset, "dataset file (JSON lines or JSON array)")->required();
    bench->add_option("--dataset-id", dataset_id, "name used in reports (default: file stem)");
    bench->add_option("--mode", mode, "full, io or cot")->check(CLI::IsMember({"full", "io", "cot"}));
    bench->add_option("--sweep-triples", sweep, "comma-separated triple counts, e.g. 0,15,30,45");
    bench->add_option("--out-dir", out_dir, "directory for report files");
    bench->add_option("--dot-dir", dot_dir, "directory for per-question DOT files");
    add_common(*bench, bench_flags);

    std::string from, export_dot_path;
    auto* exp = app.add_subcommand("export", "convert a saved outcome (ask --json) to DOT");
    exp->add_option("--from", from, "outcome JSON file")->required();
    exp->add_option("--dot", export_dot_path, "output DOT file ('-' for stdout)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    if (!argv_rev.empty()) argv_rev.pop_back();  // program name
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ask) return cmd_ask(question, topics, ask_flags, dot_path, json_path, out, err);
        if (*bench) return cmd_bench(dataset, dataset_id, mode, sweep, out_dir, dot_dir, bench_flags, out, err);
        if (*exp) return cmd_export(from, export_dot_path, out);
    } catch (const NoTopicEntities& e) {
        err << e.what() << "\n";
        return kExitNoTopicEntities;
    } catch (const UnreadableDataset& e) {
        err << e.what() << "\n";
        return kExitUnreadableDataset;
    } catch (const BackendUnavailable& e) {
        err << e.what() << "\n";
        return kExitBackendUnavailable;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace pathfuse
