// SPDX-License-Identifier: Apache-2.0

#include "pathfuse/evalkit.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "pathfuse/prompts.hpp"
#include "text_util.hpp"

namespace pathfuse {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<QARecord> record_from_json(const ordered_json& j, const std::string& dataset_id,
                                         std::size_t ordinal, std::string& why) {
    if (!j.is_object()) {
        why = "not an object";
        return std::nullopt;
    }
    QARecord r;
    r.dataset_id = dataset_id;
    if (j.contains("id")) {
        r.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    } else {
        r.id = dataset_id + "-" + std::to_string(ordinal);
    }
    if (!j.contains("question") || !j["question"].is_string() ||
        text_util::trim(j["question"].get<std::string>()).empty()) {
        why = "missing question";
        return std::nullopt;
    }
    r.question = j["question"].get<std::string>();

    if (j.contains("topic_entities") && j["topic_entities"].is_object()) {
        for (const auto& [name, mid] : j["topic_entities"].items()) {
            if (mid.is_string()) r.topic_entities.emplace_back(name, mid.get<std::string>());
        }
    } else if (j.contains("topic_entity") && j["topic_entity"].is_object()) {
        // Community layout keyed by MID.
        for (const auto& [mid, name] : j["topic_entity"].items()) {
            if (name.is_string()) r.topic_entities.emplace_back(name.get<std::string>(), mid);
        }
    }

    auto add_answer = [&](const ordered_json& a) {
        if (a.is_string() && !a.get<std::string>().empty()) {
            r.gold_answers.push_back(a.get<std::string>());
        } else if (a.is_object()) {
            for (const char* key : {"answer", "text", "name"}) {
                if (a.contains(key) && a[key].is_string()) {
                    r.gold_answers.push_back(a[key].get<std::string>());
                    break;
                }
            }
            if (a.contains("aliases") && a["aliases"].is_array()) {
                for (const auto& alias : a["aliases"]) {
                    if (alias.is_string() && !alias.get<std::string>().empty()) {
                        r.gold_answers.push_back(alias.get<std::string>());
                    }
                }
            }
        }
    };
    if (j.contains("answers") && j["answers"].is_array()) {
        for (const auto& a : j["answers"]) add_answer(a);
    } else if (j.contains("answer")) {
        add_answer(j["answer"]);
    }
    if (r.gold_answers.empty()) {
        why = "missing answers";
        return std::nullopt;
    }
    return r;
}

bool is_word_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending = !out.empty();
            continue;
        }
        if (pending) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

template <class Fn>
void for_each_parallel(std::size_t n, std::size_t workers, Fn fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (auto i = next++; i < n; i = next++) fn(i);
        });
    }
}

std::vector<PromptKind> kinds_in(const std::vector<TranscriptEntry>& transcript) {
    std::vector<PromptKind> out;
    for (const auto& t : transcript) {
        if (std::find(out.begin(), out.end(), t.kind) == out.end()) out.push_back(t.kind);
    }
    return out;
}

EvalResult summarize(std::string dataset_id, std::string method, std::vector<RecordResult> results,
                     std::vector<CostLedger> ledgers) {
    EvalResult out;
    out.dataset_id = std::move(dataset_id);
    out.method = std::move(method);
    const auto hits = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.hit; });
    out.hits_at_1 = results.empty() ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(results.size());
    out.records = std::move(results);
    if (!ledgers.empty()) out.cost = aggregate(ledgers, out.method);
    return out;
}

}  // namespace

DatasetLoad load_dataset(const std::string& path, const std::string& dataset_id) {
    std::ifstream in(path);
    if (!in) throw UnreadableDataset("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw UnreadableDataset("read error on " + path);
    const std::string text = buf.str();

    DatasetLoad out;
    auto skip = [&](std::size_t where, const std::string& why) {
        ++out.skipped;
        out.warnings.push_back(path + ": entry " + std::to_string(where) + " skipped: " + why);
    };

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        ordered_json doc;
        try {
            doc = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UnreadableDataset(path + ": " + e.what());
        }
        std::size_t k = 0;
        for (const auto& j : doc) {
            std::string why;
            if (auto r = record_from_json(j, dataset_id, k, why)) out.records.push_back(std::move(*r));
            else skip(k, why);
            ++k;
        }
    } else {
        std::size_t lineno = 0;
        for (auto line : text_util::split_lines(text)) {
            ++lineno;
            if (text_util::trim(line).empty()) continue;
            std::string why;
            try {
                auto j = ordered_json::parse(line);
                if (auto r = record_from_json(j, dataset_id, lineno, why)) out.records.push_back(std::move(*r));
                else skip(lineno, why);
            } catch (const nlohmann::json::exception& e) {
                skip(lineno, e.what());
            }
        }
    }
    for (const auto& w : out.warnings) spdlog::warn("{}", w);
    return out;
}

std::string normalize_answer(std::string_view s) {
    std::string out = collapse_whitespace(text_util::to_lower(s));
    while (true) {
        const std::string before = out;
        for (std::string_view article : {"the", "a", "an"}) {
            if (out == article) {
                out.clear();
            } else if (out.size() > article.size() && out.starts_with(article) && out[article.size()] == ' ') {
                out.erase(0, article.size() + 1);
            }
        }
        while (!out.empty() && std::string_view(".,!?;:").find(out.back()) != std::string_view::npos) {
            out.pop_back();
        }
        out = std::string(text_util::trim(out));
        if (out == before) return out;
    }
}

bool hits_at_1(std::string_view predicted, std::span<const std::string> gold, MatchPolicy policy) {
    const auto p = normalize_answer(predicted);
    if (p.empty()) return false;
    for (const auto& g_raw : gold) {
        const auto g = normalize_answer(g_raw);
        if (g.empty()) continue;
        if (p == g) return true;
        if (policy == MatchPolicy::Strict) continue;
        for (auto pos = p.find(g); pos != std::string::npos; pos = p.find(g, pos + 1)) {
            const auto end = pos + g.size();
            const bool left = pos == 0 || !is_word_byte(p[pos - 1]);
            const bool right = end == p.size() || !is_word_byte(p[end]);
            if (left && right) return true;
        }
    }
    return false;
}

EvalResult run_baseline(BaselineMode mode, std::span<const QARecord> records, AgentGateway& agent,
                        const AnswerConfig& config, RunOptions options) {
    const auto kind = mode == BaselineMode::IO ? PromptKind::IO : PromptKind::CoT;
    std::vector<RecordResult> results(records.size());
    std::vector<CostLedger> ledgers(records.size());
    const auto workers = agent.order_sensitive() ? 1 : options.workers;

    for_each_parallel(records.size(), workers, [&](std::size_t i) {
        const auto& rec = records[i];
        AgentSession session(agent, config.agent, config.token_counter, config.clock);
        auto& r = results[i];
        r.id = rec.id;
        try {
            r.predicted = session.complete(kind, render_prompt(kind, {{"question", rec.question}}));
            r.hit = hits_at_1(r.predicted, rec.gold_answers, options.policy);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.llm_calls = session.ledger().call_count();
        r.kinds_seen = kinds_in(session.transcript());
        ledgers[i] = session.take_ledger();
    });

    auto method = options.method.empty() ? std::string(to_string(kind)) : options.method;
    const auto dataset = records.empty() ? std::string() : records.front().dataset_id;
    return summarize(dataset, std::move(method), std::move(results), std::move(ledgers));
}

EvalResult run_pipeline(std::span<const QARecord> records, AgentGateway& agent, const KnowledgeBackend& backend,
                        const AnswerConfig& config, RunOptions options) {
    std::vector<RecordResult> results(records.size());
    std::vector<CostLedger> ledgers(records.size());
    const auto workers = agent.order_sensitive() ? 1 : options.workers;

    for_each_parallel(records.size(), workers, [&](std::size_t i) {
        const auto& rec = records[i];
        auto& r = results[i];
        r.id = rec.id;
        try {
            auto outcome = answer_question(rec.question, rec.topic_entities, agent, backend, config);
            r.predicted = outcome.answer_text;
            r.hit = hits_at_1(r.predicted, rec.gold_answers, options.policy);
            r.llm_calls = outcome.ledger.call_count();
            r.kinds_seen = kinds_in(outcome.transcript);
            r.source = outcome.source;
            r.subgraphs = std::move(outcome.final_subgraphs);
            if (!outcome.errors.empty()) r.error = outcome.errors.front();
            ledgers[i] = std::move(outcome.ledger);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    auto method = options.method.empty() ? std::string("full") : options.method;
    const auto dataset = records.empty() ? std::string() : records.front().dataset_id;
    return summarize(dataset, std::move(method), std::move(results), std::move(ledgers));
}

std::string render_hits_table(std::span<const EvalResult> results) {
    std::size_t dw = 7, mw = 6;
    for (const auto& r : results) {
        dw = std::max(dw, r.dataset_id.size());
        mw = std::max(mw, r.method.size());
    }
    std::string out = fmt::format("{:<{}}  {:<{}}  {:>7}  {:>6}\n", "Dataset", dw, "Method", mw, "Records", "Hits@1");
    for (const auto& r : results) {
        out += fmt::format("{:<{}}  {:<{}}  {:>7}  {:>6.1f}\n", r.dataset_id, dw, r.method, mw,
                           r.records.size(), r.hits_at_1);
    }
    return out;
}

std::string render_hits_csv(std::span<const EvalResult> results) {
    std::string out = "dataset,method,records,hits_at_1\n";
    for (const auto& r : results) {
        out += fmt::format("{},{},{},{:.1f}\n", r.dataset_id, r.method, r.records.size(), r.hits_at_1);
    }
    return out;
}

}  // namespace pathfuse
