#include "taskvec/pipeline/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"
#include "taskvec/pipeline/prompts.hpp"

namespace taskvec::pipeline {

namespace {

// One generator exchange with the shared attempt budget: transport errors and
// unparseable replies both consume an attempt.
template <typename ParseFn>
auto call_and_parse(GeneratorClient& client, const CompletionRequest& request,
                    const RetryPolicy& policy, ParseFn parse) {
    auto sleep_ms = policy.sleeper
                        ? policy.sleeper
                        : std::function<void(int)>([](int ms) {
                              std::this_thread::sleep_for(std::chrono::milliseconds(ms));
                          });
    int attempts = policy.attempts < 1 ? 1 : policy.attempts;
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) sleep_ms(policy.base_delay_ms * (1 << (attempt - 1)));
        try {
            return parse(client.complete(request));
        } catch (const transport_error& e) {
            last_error = e.what();
        } catch (const parse_error& e) {
            last_error = e.what();
        }
    }
    throw transport_error("gave up after " + std::to_string(attempts) +
                          " attempts; last error: " + last_error);
}

std::string entry_key(const std::string& instruction, const std::string& input) {
    return trim(instruction) + '\x1f' + trim(input);
}

struct GenJob {
    size_t entry_index;
};

struct GenOutcome {
    std::optional<dataset::TaskRecord> record;
    std::vector<ReportEvent> events;
};

}  // namespace

ClassificationOutput classify_entries(const std::vector<SourceEntry>& entries,
                                      GeneratorClient& client, const PipelineOptions& options) {
    if (options.chunk_size == 0) throw spec_error("chunk_size must be positive");

    ClassificationOutput out;
    std::map<std::string, ClassificationRow> by_key;
    for (size_t start = 0; start < entries.size(); start += options.chunk_size) {
        size_t end = std::min(entries.size(), start + options.chunk_size);
        std::vector<SourceEntry> chunk(entries.begin() + static_cast<long>(start),
                                       entries.begin() + static_cast<long>(end));
        CompletionRequest request{"", build_classification_prompt(chunk)};
        ClassificationResult parsed;
        try {
            parsed = call_and_parse(client, request, options.retry,
                                    [](const std::string& reply) {
                                        return parse_classification_response(reply);
                                    });
        } catch (const transport_error& e) {
            out.events.push_back({"chunk-failed",
                                  "",
                                  "entries " + std::to_string(start + 1) + ".." +
                                      std::to_string(end) + ": " + e.what()});
            continue;
        }
        for (const auto& v : parsed.violations)
            out.events.push_back({"row-violation", "", v});
        for (const auto& row : parsed.rows)
            by_key.emplace(entry_key(row.instruction, row.example_input), row);
    }

    for (const auto& e : entries) {
        auto it = by_key.find(entry_key(e.instruction, e.example_input));
        if (it == by_key.end()) {
            ++out.unclassified;
            out.events.push_back({"unclassified", e.instruction.substr(0, 60),
                                  "no verdict row matched this entry"});
            continue;
        }
        switch (it->second.verdict) {
            case Verdict::good: ++out.good; break;
            case Verdict::limited: ++out.limited; break;
            case Verdict::invalid: ++out.invalid; break;
        }
        out.rows.push_back(it->second);
    }
    return out;
}

PipelineResult run_pipeline(const std::vector<SourceEntry>& entries, GeneratorClient& client,
                            const PipelineOptions& options) {
    if (options.num_examples < 30 || options.num_examples > 50)
        throw spec_error("num_examples must be in [30, 50]");
    if (options.keep_pairs < 30)
        throw spec_error("keep_pairs below 30 cannot produce dataset-grade records");
    if (options.chunk_size == 0) throw spec_error("chunk_size must be positive");

    PipelineResult result;
    auto& report = result.report;
    report.total_entries = entries.size();

    // Phase 1: classification, chunked, sequential.
    ClassificationOutput classified = classify_entries(entries, client, options);
    report.events = classified.events;
    report.good = classified.good;
    report.limited = classified.limited;
    report.invalid = classified.invalid;
    report.unclassified = classified.unclassified;
    std::map<std::string, Verdict> verdicts;
    for (const auto& row : classified.rows)
        verdicts.emplace(entry_key(row.instruction, row.example_input), row.verdict);

    // Collect generation jobs in entry order.
    std::vector<GenJob> jobs;
    std::set<std::string> seen_instructions;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        auto it = verdicts.find(entry_key(e.instruction, e.example_input));
        if (it == verdicts.end() || it->second != Verdict::good) continue;
        if (trim(e.example_input).empty()) {
            ++report.skipped_input_free;
            report.events.push_back({"input-free", e.instruction.substr(0, 60),
                                     "GOOD entry without an example input cannot seed pairs"});
            continue;
        }
        if (!seen_instructions.insert(trim(e.instruction)).second) {
            report.events.push_back({"duplicate-instruction", e.instruction.substr(0, 60),
                                     "instruction repeats an earlier entry; dropped"});
            continue;
        }
        jobs.push_back({i});
    }
    report.generation_attempted = jobs.size();

    // Phase 2: pair generation, optionally concurrent. Outcomes land in a
    // per-job slot and merge in entry order afterwards.
    std::vector<GenOutcome> outcomes(jobs.size());
    auto run_job = [&](size_t job_index) {
        const auto& entry = entries[jobs[job_index].entry_index];
        GenOutcome out;
        std::vector<dataset::ExamplePair> raw;
        try {
            CompletionRequest request{"", build_generation_prompt(entry, options.num_examples)};
            raw = call_and_parse(client, request, options.retry,
                                 [&](const std::string& reply) {
                                     return parse_generation_response(reply, options.num_examples);
                                 });
        } catch (const transport_error& e) {
            out.events.push_back({"generation-failed", entry.instruction.substr(0, 60), e.what()});
            outcomes[job_index] = std::move(out);
            return;
        }

        dataset::TaskRecord rec;
        rec.instruction = entry.instruction;
        rec.task_id = dataset::make_task_id(entry.instruction);
        try {
            rec.category = dataset::derive_category(entry.instruction);
        } catch (const error& e) {
            out.events.push_back({"validation-dropped", entry.instruction.substr(0, 60), e.what()});
            outcomes[job_index] = std::move(out);
            return;
        }
        rec.source = dataset::Source::synthetic;
        rec.generator = client.label();

        std::set<std::string> seen_inputs;
        for (auto& p : raw) {
            if (rec.pairs.size() >= options.keep_pairs) break;
            std::string in = trim(p.input);
            if (in.empty() || trim(p.output).empty()) continue;
            if (!seen_inputs.insert(in).second) continue;
            rec.pairs.push_back(std::move(p));
        }

        auto violations = dataset::validate_task(rec, dataset::Grade::dataset);
        if (!violations.empty()) {
            std::ostringstream detail;
            for (size_t v = 0; v < violations.size(); ++v)
                detail << (v ? "; " : "") << violations[v].code << ": " << violations[v].message;
            out.events.push_back(
                {"validation-dropped", entry.instruction.substr(0, 60), detail.str()});
            outcomes[job_index] = std::move(out);
            return;
        }
        out.record = std::move(rec);
        outcomes[job_index] = std::move(out);
    };

    size_t workers = std::max<size_t>(1, options.workers);
    if (workers == 1 || jobs.size() <= 1) {
        for (size_t j = 0; j < jobs.size(); ++j) run_job(j);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (size_t w = 0; w < std::min(workers, jobs.size()); ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    size_t j = next.fetch_add(1);
                    if (j >= jobs.size()) return;
                    run_job(j);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (auto& out : outcomes) {
        for (auto& ev : out.events) report.events.push_back(std::move(ev));
        if (out.record.has_value()) {
            ++report.records_kept;
            result.taskset.tasks.push_back(std::move(*out.record));
        } else {
            ++report.records_dropped;
        }
    }
    result.taskset.manifest = dataset::tally_categories(result.taskset);
    return result;
}

std::string serialize_report(const PipelineReport& report) {
    using ordered_json = nlohmann::ordered_json;
    std::ostringstream out;
    ordered_json summary;
    summary["total_entries"] = report.total_entries;
    summary["good"] = report.good;
    summary["limited"] = report.limited;
    summary["invalid"] = report.invalid;
    summary["unclassified"] = report.unclassified;
    summary["skipped_input_free"] = report.skipped_input_free;
    summary["generation_attempted"] = report.generation_attempted;
    summary["records_kept"] = report.records_kept;
    summary["records_dropped"] = report.records_dropped;
    out << summary.dump() << "\n";
    for (const auto& ev : report.events) {
        ordered_json line;
        line["kind"] = ev.kind;
        line["instruction"] = ev.instruction;
        line["detail"] = ev.detail;
        out << line.dump() << "\n";
    }
    return out.str();
}

std::vector<SourceEntry> load_source_entries(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("cannot open source entries file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();

    auto entry_from = [](const nlohmann::json& j) {
        SourceEntry e;
        e.instruction = j.value("instruction", "");
        e.example_input = j.contains("example_input") ? j["example_input"].get<std::string>()
                                                      : j.value("input", "");
        e.example_output = j.contains("example_output") ? j["example_output"].get<std::string>()
                                                        : j.value("output", "");
        return e;
    };

    std::vector<SourceEntry> entries;
    std::string head = trim(text);
    if (!head.empty() && head.front() == '[') {
        try {
            auto arr = nlohmann::json::parse(text);
            for (const auto& j : arr) entries.push_back(entry_from(j));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("bad source entries array: " + std::string(e.what()));
        }
    } else {
        size_t line_no = 0;
        for (const auto& line : split_lines(text)) {
            ++line_no;
            if (trim(line).empty()) continue;
            try {
                entries.push_back(entry_from(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    return entries;
}

}  // namespace taskvec::pipeline
