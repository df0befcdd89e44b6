#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "taskvec/backend/toy.hpp"
#include "taskvec/common/errors.hpp"
#include "taskvec/compositional/grid.hpp"
#include "taskvec/compositional/strategies.hpp"
#include "taskvec/config.hpp"
#include "taskvec/dataset/bundle.hpp"
#include "taskvec/experiments/regions.hpp"
#include "taskvec/experiments/sweep.hpp"
#include "taskvec/pipeline/pipeline.hpp"
#include "taskvec/report/csv.hpp"
#include "taskvec/report/run_dir.hpp"
#include "taskvec/report/svg.hpp"
#include "taskvec/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace taskvec;

struct Overrides {
    std::string config_path;
    std::optional<int> layer;
    std::optional<std::uint64_t> seed;
    std::string tasks;
    std::string backend;
    std::string judge;
    std::string out;
    std::optional<int> workers;
    std::string input;  // dataset filter/generate source file
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "Config file (JSON); defaults apply when omitted");
    cmd->add_option("--layer", o.layer, "Layer override");
    cmd->add_option("--seed", o.seed, "Seed override");
    cmd->add_option("--tasks", o.tasks, "Task bundle path override");
    cmd->add_option("--backend", o.backend, "Backend kind override (toy)");
    cmd->add_option("--judge", o.judge, "Judge kind override (oracle | llm)");
    cmd->add_option("--out", o.out, "Output directory override");
}

LoadedConfig resolve_config(const Overrides& o) {
    LoadedConfig lc = load_config(o.config_path);
    if (o.seed) {
        lc.config.seed = *o.seed;
        lc.config.compositional.seed = *o.seed;
    }
    if (!o.tasks.empty()) lc.config.dataset_path = o.tasks;
    if (!o.backend.empty()) lc.config.backend.kind = o.backend;
    if (!o.judge.empty()) lc.config.judge.kind = o.judge;
    if (!o.out.empty()) lc.config.out_dir = o.out;
    if (o.workers) lc.config.pipeline.workers = *o.workers;
    if (lc.config.backend.kind != "toy" && lc.config.backend.kind != "real")
        throw config_error("backend kind must be toy or real");
    if (lc.config.judge.kind != "oracle" && lc.config.judge.kind != "llm")
        throw config_error("judge kind must be oracle or llm");
    return lc;
}

dataset::TaskSet load_tasks(const RunConfig& cfg) {
    if (cfg.dataset_path.empty()) return backend::toy_letter_taskset();
    return dataset::load_taskset(cfg.dataset_path);
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    report::write_text_file((fs::path(dir) / name).string(), content);
}

report::RunManifest base_manifest(const RunConfig& cfg, const std::string& command,
                                  const backend::Backend* b) {
    report::RunManifest m;
    m.tool_version = kToolVersion;
    m.command = command;
    m.backend_id = b ? b->id() : "";
    m.judge_kind = cfg.judge.kind;
    m.seed = cfg.seed;
    m.separator = cfg.prompt_template.separator;
    m.layers = cfg.layers;
    return m;
}

// ---- sweep ----------------------------------------------------------------

std::vector<int> sweep_layers(const RunConfig& cfg, const Overrides& o,
                              const backend::Backend& b) {
    if (o.layer) return {*o.layer};
    if (!cfg.layers.empty()) return cfg.layers;
    std::vector<int> all(static_cast<size_t>(b.num_layers()));
    for (int l = 0; l < b.num_layers(); ++l) all[static_cast<size_t>(l)] = l;
    return all;
}

void emit_sweep_artifacts(const std::string& dir, const experiments::SweepResult& result) {
    write_file(dir, "rows.jsonl", experiments::serialize_rows(result.rows));
    write_file(dir, "summary.json", experiments::serialize_summary(result.summary));

    const auto& summary = result.summary;
    std::vector<int> layers;
    for (const auto& [layer, means] : summary.per_layer) layers.push_back(layer);

    report::CsvWriter per_layer;
    per_layer.row({"layer", "n", "format_mean", "correctness_mean"});
    for (const auto& [layer, means] : summary.per_layer)
        per_layer.row({std::to_string(layer), std::to_string(means.n),
                       report::csv_num(means.format), report::csv_num(means.correctness)});
    write_file(dir, "per_layer.csv", per_layer.str());

    report::CsvWriter per_cat;
    per_cat.row({"layer", "category", "n", "format_mean", "correctness_mean"});
    for (const auto& [layer, cats] : summary.per_layer_category)
        for (const auto& [cat, means] : cats)
            per_cat.row({std::to_string(layer), cat, std::to_string(means.n),
                         report::csv_num(means.format), report::csv_num(means.correctness)});
    write_file(dir, "per_layer_category.csv", per_cat.str());

    // Layer curves: overall task-vector correctness per layer, flat baseline
    // lines, and one series per category.
    std::vector<report::Series> series;
    report::Series overall{"task vector", {}};
    for (int layer : layers) overall.values.push_back(summary.per_layer.at(layer).correctness);
    series.push_back(overall);
    series.push_back({"zero-shot", std::vector<double>(layers.size(), summary.zero_shot.correctness)});
    series.push_back({"few-shot", std::vector<double>(layers.size(), summary.few_shot.correctness)});
    std::set<std::string> categories;
    for (const auto& [layer, cats] : summary.per_layer_category)
        for (const auto& [cat, means] : cats) categories.insert(cat);
    for (const auto& cat : categories) {
        report::Series s{cat, {}};
        for (int layer : layers) {
            const auto& cats = summary.per_layer_category.at(layer);
            auto it = cats.find(cat);
            s.values.push_back(it == cats.end() ? 0.0 : it->second.correctness);
        }
        series.push_back(std::move(s));
    }
    write_file(dir, "layer_curves.svg",
               report::line_chart_svg("Correctness by injection layer", "layer",
                                      "mean correctness", layers, series, 0.0, 10.0));

    // Correctness score distribution per condition.
    std::map<std::string, std::vector<double>> hist;
    for (const auto& row : result.rows) {
        if (row.failed) continue;
        auto& bins = hist[experiments::to_string(row.condition)];
        if (bins.empty()) bins.assign(11, 0.0);
        int score = std::clamp(row.scores.correctness, 0, 10);
        bins[static_cast<size_t>(score)] += 1.0;
    }
    std::vector<std::string> score_groups;
    for (int s = 0; s <= 10; ++s) score_groups.push_back(std::to_string(s));
    std::vector<report::Series> hist_series;
    double hist_max = 1.0;
    report::CsvWriter hist_csv;
    hist_csv.row({"condition", "score", "count"});
    for (const auto& [condition, bins] : hist) {
        hist_series.push_back({condition, bins});
        for (size_t s = 0; s < bins.size(); ++s) {
            hist_max = std::max(hist_max, bins[s]);
            hist_csv.row({condition, std::to_string(s), report::csv_num(bins[s])});
        }
    }
    write_file(dir, "score_hist.csv", hist_csv.str());
    write_file(dir, "score_hist.svg",
               report::grouped_bars_svg("Correctness score distribution", score_groups,
                                        hist_series, hist_max));
}

int cmd_sweep(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    auto b = backend_from_config(cfg.backend);
    dataset::TaskSet tasks = load_tasks(cfg);

    report::create_run_dir(cfg.out_dir);
    std::ofstream transcripts;
    std::function<void(const std::string&)> transcript;
    if (cfg.judge.kind == "llm") {
        transcripts.open((fs::path(cfg.out_dir) / "transcripts.txt").string(),
                         std::ios::binary | std::ios::app);
        transcript = [&transcripts](const std::string& reply) {
            transcripts << reply << "\n---\n";
        };
    }
    JudgeBundle jb = judge_from_config(cfg.judge, transcript);

    experiments::SweepOptions options;
    options.layers = sweep_layers(cfg, o, *b);
    options.episodes_per_task = static_cast<size_t>(cfg.episodes_per_task);
    options.k_shots = static_cast<size_t>(cfg.k_shots);
    options.seed = cfg.seed;
    options.prompt_template = cfg.prompt_template;
    options.generation = cfg.generation;
    options.failure_threshold = cfg.failure_threshold;

    report::RunManifest manifest = base_manifest(cfg, "sweep", b.get());
    manifest.layers = options.layers;
    report::write_run_preamble(cfg.out_dir, lc.raw_text, manifest);

    experiments::SweepResult result = run_layer_sweep(tasks, *b, *jb.judge, options);
    emit_sweep_artifacts(cfg.out_dir, result);

    std::cout << "sweep: " << result.summary.rows_processed << " rows ("
              << result.summary.rows_failed << " failed) across " << result.summary.n_tasks
              << " tasks; artifacts in " << cfg.out_dir << "\n";
    if (result.summary.failure_flag) {
        std::cerr << R"({"error":"failure rate above threshold","type":"partial-failure"})"
                  << "\n";
        return 1;
    }
    return 0;
}

// ---- regions --------------------------------------------------------------

int cmd_regions(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    auto b = backend_from_config(cfg.backend);
    dataset::TaskSet tasks = load_tasks(cfg);

    int layer;
    if (o.layer) layer = *o.layer;
    else if (!cfg.layers.empty()) layer = cfg.layers.front();
    else layer = resolve_compositional_layer(cfg.compositional, cfg.backend);

    report::create_run_dir(cfg.out_dir);
    JudgeBundle jb = judge_from_config(cfg.judge);

    experiments::SweepOptions options;
    options.episodes_per_task = static_cast<size_t>(cfg.episodes_per_task);
    options.k_shots = static_cast<size_t>(cfg.k_shots);
    options.seed = cfg.seed;
    options.prompt_template = cfg.prompt_template;
    options.generation = cfg.generation;
    options.failure_threshold = cfg.failure_threshold;

    report::RunManifest manifest = base_manifest(cfg, "regions", b.get());
    manifest.layers = {layer};
    report::write_run_preamble(cfg.out_dir, lc.raw_text, manifest);

    experiments::SweepResult result =
        experiments::fix_layer_and_run(tasks, *b, *jb.judge, layer, options);
    write_file(cfg.out_dir, "rows.jsonl", experiments::serialize_rows(result.rows));
    write_file(cfg.out_dir, "summary.json", experiments::serialize_summary(result.summary));

    experiments::RegionAnalysis analysis =
        experiments::region_analysis(result.rows, layer, cfg.regions);
    write_file(cfg.out_dir, "regions.csv", experiments::region_points_csv(analysis));

    std::vector<report::ScatterPoint> points;
    for (const auto& p : analysis.points)
        points.push_back({p.boost, p.deficit,
                          p.region.empty() ? std::string("mid") : "region " + p.region});
    write_file(cfg.out_dir, "regions.svg",
               report::scatter_svg("Boost vs deficit at layer " + std::to_string(layer),
                                   "boost (tv - zs)", "deficit (fs - tv)", points, -10.0, 10.0,
                                   -10.0, 10.0));

    size_t r1 = 0, r2 = 0;
    for (const auto& p : analysis.points) {
        if (p.region == "1") ++r1;
        if (p.region == "2") ++r2;
    }
    std::cout << "regions: " << analysis.points.size() << " tasks at layer " << layer << "; "
              << r1 << " in region 1, " << r2 << " in region 2; artifacts in " << cfg.out_dir
              << "\n";
    if (result.summary.failure_flag) {
        std::cerr << R"({"error":"failure rate above threshold","type":"partial-failure"})"
                  << "\n";
        return 1;
    }
    return 0;
}

// ---- grid -----------------------------------------------------------------

compositional::AttributePools pools_from_config(const RunConfig& cfg,
                                                const backend::Backend& b) {
    compositional::AttributePools pools = cfg.compositional.pools == "car"
                                              ? compositional::car_pools()
                                              : compositional::toy_pools();
    compositional::check_pools(b, pools);
    return pools;
}

int cmd_grid(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    auto b = backend_from_config(cfg.backend);
    compositional::AttributePools pools = pools_from_config(cfg, *b);
    int layer = o.layer ? *o.layer : resolve_compositional_layer(cfg.compositional, cfg.backend);

    report::create_run_dir(cfg.out_dir);
    report::RunManifest manifest = base_manifest(cfg, "grid", b.get());
    manifest.seed = cfg.compositional.seed;
    manifest.layers = {layer};
    report::write_run_preamble(cfg.out_dir, lc.raw_text, manifest);

    std::vector<compositional::CarRecord> records =
        compositional::gen_car_records(pools, cfg.compositional.seed, 8);
    compositional::CompositionalPrompt prompt = compositional::build_compositional_prompt(
        *b, records, cfg.prompt_template, pools.style);
    compositional::InfluenceGrid grid = compositional::influence_grid(*b, prompt, layer);

    write_file(cfg.out_dir, "grid.csv", compositional::grid_csv(grid));
    write_file(cfg.out_dir, "grid_meta.json", compositional::grid_meta_json(grid));
    write_file(cfg.out_dir, "grid.svg",
               report::heatmap_svg("Influence grid, layer " + std::to_string(layer), grid.rows,
                                   grid.cols, grid.cells));

    std::cout << "grid: " << grid.rows.size() << " steps x " << grid.cols.size()
              << " sources at layer " << layer << "; artifacts in " << cfg.out_dir << "\n";
    if (!grid.audit.empty()) {
        std::cerr << R"({"error":"some grid cells failed","type":"partial-failure","count":)"
                  << grid.audit.size() << "}\n";
        return 1;
    }
    return 0;
}

// ---- strategies -----------------------------------------------------------

int cmd_strategies(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    auto b = backend_from_config(cfg.backend);
    compositional::AttributePools pools = pools_from_config(cfg, *b);
    int layer = o.layer ? *o.layer : resolve_compositional_layer(cfg.compositional, cfg.backend);

    report::create_run_dir(cfg.out_dir);
    report::RunManifest manifest = base_manifest(cfg, "strategies", b.get());
    manifest.seed = cfg.compositional.seed;
    manifest.layers = {layer};
    report::write_run_preamble(cfg.out_dir, lc.raw_text, manifest);

    compositional::StrategyOptions options;
    options.n_pairs = cfg.compositional.n_pairs;
    options.layer = layer;
    options.seed = cfg.compositional.seed;
    options.prompt_template = cfg.prompt_template;

    std::vector<compositional::StrategyResult> results;
    size_t failed = 0, attempted = 0;
    for (auto strategy : {compositional::Strategy::natural, compositional::Strategy::classic,
                          compositional::Strategy::subtask}) {
        results.push_back(compositional::strategy_eval(*b, pools, options, strategy));
        failed += static_cast<size_t>(results.back().n_failed);
        attempted += static_cast<size_t>(results.back().n_pairs + results.back().n_failed);
    }
    write_file(cfg.out_dir, "strategies.csv", compositional::strategies_csv(results));

    std::vector<std::string> groups;
    for (auto role : compositional::kAllRoles) groups.push_back(compositional::role_name(role));
    std::vector<report::Series> series;
    for (const auto& r : results) {
        report::Series s{compositional::strategy_name(r.strategy), {}};
        for (double v : r.mean_probability) s.values.push_back(v);
        series.push_back(std::move(s));
    }
    write_file(cfg.out_dir, "strategies.svg",
               report::grouped_bars_svg("Target-token probability by strategy", groups, series,
                                        1.0));

    nlohmann::ordered_json meta;
    meta["layer"] = layer;
    meta["n_pairs"] = options.n_pairs;
    for (const auto& r : results)
        meta["failures"][compositional::strategy_name(r.strategy)] = r.failures;
    write_file(cfg.out_dir, "strategies_meta.json", meta.dump(2) + "\n");

    std::cout << "strategies: " << options.n_pairs << " pairs per strategy at layer " << layer
              << "; artifacts in " << cfg.out_dir << "\n";
    if (attempted > 0 &&
        static_cast<double>(failed) > cfg.failure_threshold * static_cast<double>(attempted)) {
        std::cerr << R"({"error":"failure rate above threshold","type":"partial-failure"})"
                  << "\n";
        return 1;
    }
    return 0;
}

// ---- dataset --------------------------------------------------------------

int cmd_dataset_filter(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    if (o.input.empty()) throw config_error("dataset filter needs --input FILE");
    std::vector<pipeline::SourceEntry> entries = pipeline::load_source_entries(o.input);

    auto client = client_from_config(cfg.pipeline.client);
    pipeline::PipelineOptions options;
    options.num_examples = static_cast<size_t>(cfg.pipeline.num_examples);
    options.keep_pairs = static_cast<size_t>(cfg.pipeline.keep_pairs);
    options.chunk_size = static_cast<size_t>(cfg.pipeline.chunk_size);
    pipeline::ClassificationOutput out = pipeline::classify_entries(entries, *client, options);

    report::CsvWriter csv;
    csv.row({"instruction", "example_input", "verdict", "explanation"});
    for (const auto& row : out.rows)
        csv.row({row.instruction, row.example_input, pipeline::to_string(row.verdict),
                 row.explanation});

    std::cout << "filter: " << entries.size() << " entries -> good " << out.good << ", limited "
              << out.limited << ", invalid " << out.invalid << ", unclassified "
              << out.unclassified << "\n";
    if (!o.out.empty()) {
        report::create_run_dir(cfg.out_dir);
        report::write_run_preamble(cfg.out_dir, lc.raw_text,
                                   base_manifest(cfg, "dataset filter", nullptr));
        write_file(cfg.out_dir, "classification.csv", csv.str());
        nlohmann::ordered_json events = nlohmann::ordered_json::array();
        for (const auto& ev : out.events)
            events.push_back({{"kind", ev.kind}, {"instruction", ev.instruction},
                              {"detail", ev.detail}});
        write_file(cfg.out_dir, "events.json", events.dump(2) + "\n");
        std::cout << "artifacts in " << cfg.out_dir << "\n";
    }
    return 0;
}

int cmd_dataset_generate(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    RunConfig& cfg = lc.config;
    if (o.input.empty()) throw config_error("dataset generate needs --input FILE");
    std::vector<pipeline::SourceEntry> entries = pipeline::load_source_entries(o.input);

    auto client = client_from_config(cfg.pipeline.client);
    pipeline::PipelineOptions options;
    options.num_examples = static_cast<size_t>(cfg.pipeline.num_examples);
    options.keep_pairs = static_cast<size_t>(cfg.pipeline.keep_pairs);
    options.chunk_size = static_cast<size_t>(cfg.pipeline.chunk_size);
    options.workers = static_cast<size_t>(std::max(1, cfg.pipeline.workers));

    report::create_run_dir(cfg.out_dir);
    report::write_run_preamble(cfg.out_dir, lc.raw_text,
                               base_manifest(cfg, "dataset generate", nullptr));

    pipeline::PipelineResult result = pipeline::run_pipeline(entries, *client, options);
    write_file(cfg.out_dir, "taskset.jsonl", dataset::serialize_taskset(result.taskset));
    write_file(cfg.out_dir, "report.jsonl", pipeline::serialize_report(result.report));

    std::cout << "generate: kept " << result.report.records_kept << " of "
              << result.report.generation_attempted << " attempted records; bundle in "
              << cfg.out_dir << "/taskset.jsonl\n";
    return 0;
}

int cmd_dataset_validate(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    if (lc.config.dataset_path.empty())
        throw config_error("dataset validate needs --tasks FILE (or dataset_path in config)");
    dataset::TaskSet set = dataset::load_taskset(lc.config.dataset_path);

    size_t bad_records = 0;
    for (const auto& task : set.tasks) {
        auto violations = dataset::validate_task(task, dataset::Grade::dataset);
        if (violations.empty()) continue;
        ++bad_records;
        for (const auto& v : violations) {
            nlohmann::ordered_json line;
            line["task_id"] = task.task_id;
            line["code"] = v.code;
            line["message"] = v.message;
            if (v.pair_index) line["pair_index"] = *v.pair_index;
            std::cout << line.dump() << "\n";
        }
    }
    std::cerr << "validate: " << set.tasks.size() << " records, " << bad_records
              << " with violations\n";
    return bad_records == 0 ? 0 : 1;
}

int cmd_dataset_stats(const Overrides& o) {
    LoadedConfig lc = resolve_config(o);
    if (lc.config.dataset_path.empty())
        throw config_error("dataset stats needs --tasks FILE (or dataset_path in config)");
    dataset::TaskSet set = dataset::load_taskset(lc.config.dataset_path);

    auto buckets = dataset::bucket_categories(set);
    // Count-descending like the published table; "other" always last.
    std::vector<std::pair<std::string, size_t>> rows(buckets.begin(), buckets.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first == "other") return false;
        if (b.first == "other") return true;
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    report::CsvWriter csv;
    csv.row({"category", "count"});
    for (const auto& [category, count] : rows) {
        std::cout << category << " " << count << "\n";
        csv.row({category, std::to_string(count)});
    }
    if (!o.out.empty()) {
        report::create_run_dir(lc.config.out_dir);
        write_file(lc.config.out_dir, "stats.csv", csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Task-vector toolkit: extraction, injection, sweeps, and dataset plumbing"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Overrides o;

    CLI::App* dataset_cmd = app.add_subcommand("dataset", "Dataset construction and checks");
    dataset_cmd->require_subcommand(1);
    CLI::App* filter_cmd = dataset_cmd->add_subcommand("filter", "Classify source instructions");
    CLI::App* generate_cmd =
        dataset_cmd->add_subcommand("generate", "Classify then generate a task bundle");
    CLI::App* validate_cmd = dataset_cmd->add_subcommand("validate", "Validate a task bundle");
    CLI::App* stats_cmd = dataset_cmd->add_subcommand("stats", "Category table for a bundle");
    for (CLI::App* cmd : {filter_cmd, generate_cmd, validate_cmd, stats_cmd})
        add_common_options(cmd, o);
    for (CLI::App* cmd : {filter_cmd, generate_cmd})
        cmd->add_option("--input", o.input, "Source entries file (JSON array or JSONL)");
    for (CLI::App* cmd : {filter_cmd, generate_cmd})
        cmd->add_option("--workers", o.workers, "Generation worker threads");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Layer sweep over a task set");
    CLI::App* regions_cmd = app.add_subcommand("regions", "Boost/deficit region analysis");
    CLI::App* grid_cmd = app.add_subcommand("grid", "Token-level influence grid");
    CLI::App* strategies_cmd =
        app.add_subcommand("strategies", "Natural / classic / subtask comparison");
    for (CLI::App* cmd : {sweep_cmd, regions_cmd, grid_cmd, strategies_cmd})
        add_common_options(cmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (filter_cmd->parsed()) return cmd_dataset_filter(o);
        if (generate_cmd->parsed()) return cmd_dataset_generate(o);
        if (validate_cmd->parsed()) return cmd_dataset_validate(o);
        if (stats_cmd->parsed()) return cmd_dataset_stats(o);
        if (sweep_cmd->parsed()) return cmd_sweep(o);
        if (regions_cmd->parsed()) return cmd_regions(o);
        if (grid_cmd->parsed()) return cmd_grid(o);
        if (strategies_cmd->parsed()) return cmd_strategies(o);
    } catch (const taskvec::config_error& e) {
        std::cerr << R"({"error":)" << nlohmann::json(std::string(e.what())).dump()
                  << R"(,"type":"config"})" << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":)" << nlohmann::json(std::string(e.what())).dump()
                  << R"(,"type":"hard-failure"})" << "\n";
        return 1;
    }
    std::cerr << "no command\n";
    return 1;
}
