#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "taskvec/common/strings.hpp"
#include "taskvec/dataset/bundle.hpp"
#include "taskvec/dataset/types.hpp"

// The CLI is exercised end to end: spawn the installed binary, inspect exit
// codes, streams, and the files it leaves behind.

#ifndef TASKVEC_TOOL
#error "TASKVEC_TOOL must be defined to the tool binary path"
#endif
#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must be defined to the tests/data directory"
#endif

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() /
                     ("taskvec-cli-" + std::to_string(static_cast<long>(::getpid())));
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    static int counter = 0;
    fs::path p = root / ("case-" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(f), "missing file: " << path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    REQUIRE(bool(f));
}

struct ToolRun {
    int code = -1;
    std::string out;
    std::string err;
};

ToolRun run_tool(const std::string& args) {
    fs::path dir = scratch_dir();
    fs::path out_file = dir / "stdout.txt";
    fs::path err_file = dir / "stderr.txt";
    std::string cmd = std::string(TASKVEC_TOOL) + " " + args + " >" + out_file.string() +
                      " 2>" + err_file.string();
    int status = std::system(cmd.c_str());
    ToolRun r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

size_t count_lines(const std::string& text) {
    size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

std::string fixture_path() {
    return (fs::path(TEST_DATA_DIR) / "fixture_two_tasks.jsonl").string();
}

}  // namespace

TEST_CASE("cli reports its version") {
    ToolRun r = run_tool("--version");
    CHECK(r.code == 0);
    CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("cli rejects a missing subcommand and an unknown one") {
    CHECK(run_tool("").code != 0);
    CHECK(run_tool("frobnicate").code != 0);
}

TEST_CASE("sweep produces the full artifact set on the toy tasks") {
    fs::path dir = scratch_dir();
    fs::path cfg = dir / "config.json";
    spit(cfg, "{\"episodes_per_task\": 2}\n");
    fs::path out = dir / "run";

    ToolRun r = run_tool("sweep --config " + cfg.string() + " --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep:") != std::string::npos);

    for (const char* name : {"rows.jsonl", "summary.json", "per_layer.csv",
                             "per_layer_category.csv", "layer_curves.svg", "score_hist.csv",
                             "score_hist.svg", "config.json", "manifest.json"})
        CHECK_MESSAGE(fs::exists(out / name), name);

    // 4 toy tasks x 2 episodes x (zero-shot + few-shot + 5 layers).
    CHECK(count_lines(slurp(out / "rows.jsonl")) == 56);
    std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"per_layer\"") != std::string::npos);
    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"command\": \"sweep\"") != std::string::npos);
    CHECK(manifest.find("\"backend_id\": \"toy-v1\"") != std::string::npos);
    // The run dir keeps the config bytes verbatim.
    CHECK(slurp(out / "config.json") == "{\"episodes_per_task\": 2}\n");
    std::string per_layer = slurp(out / "per_layer.csv");
    CHECK(per_layer.rfind("layer,n,format_mean,correctness_mean\n", 0) == 0);
    CHECK(count_lines(per_layer) == 6);  // header + 5 layers
}

TEST_CASE("sweep restricted to one layer only reports that layer") {
    fs::path dir = scratch_dir();
    fs::path cfg = dir / "config.json";
    spit(cfg, "{\"episodes_per_task\": 1}\n");
    fs::path out = dir / "run";

    ToolRun r = run_tool("sweep --config " + cfg.string() + " --layer 2 --out " + out.string());
    CHECK(r.code == 0);
    std::string per_layer = slurp(out / "per_layer.csv");
    CHECK(count_lines(per_layer) == 2);
    CHECK(per_layer.find("\n2,") != std::string::npos);
}

TEST_CASE("a non-empty output directory is refused as a hard failure") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "run";
    fs::create_directories(out);
    spit(out / "leftover.txt", "old artifacts\n");

    ToolRun r = run_tool("sweep --out " + out.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("hard-failure") != std::string::npos);
    CHECK(slurp(out / "leftover.txt") == "old artifacts\n");
}

TEST_CASE("regions emits the scatter artifacts at a fixed layer") {
    fs::path dir = scratch_dir();
    fs::path cfg = dir / "config.json";
    spit(cfg, "{\"episodes_per_task\": 2}\n");
    fs::path out = dir / "run";

    ToolRun r =
        run_tool("regions --config " + cfg.string() + " --layer 2 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("regions:") != std::string::npos);
    for (const char* name : {"rows.jsonl", "summary.json", "regions.csv", "regions.svg"})
        CHECK_MESSAGE(fs::exists(out / name), name);
    std::string csv = slurp(out / "regions.csv");
    CHECK(csv.rfind("task_id,category,zero_shot,few_shot,task_vector,boost,deficit,region\n",
                    0) == 0);
    CHECK(count_lines(csv) == 5);  // header + 4 toy tasks
    // Layer 2 transfers perfectly on the toy model, so every task lands in
    // the boost-without-deficit region.
    CHECK(taskvec::count_occurrences(csv, ",1\n") == 4);
}

TEST_CASE("grid renders the influence matrix for the toy pools") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "run";

    ToolRun r = run_tool("grid --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("grid:") != std::string::npos);
    for (const char* name : {"grid.csv", "grid_meta.json", "grid.svg", "manifest.json"})
        CHECK_MESSAGE(fs::exists(out / name), name);
    std::string csv = slurp(out / "grid.csv");
    CHECK(csv.rfind("row_token,", 0) == 0);
    CHECK(csv.find("NATURAL") != std::string::npos);
    std::string meta = slurp(out / "grid_meta.json");
    CHECK(meta.find("\"layer\": 2") != std::string::npos);
    CHECK(meta.find("\"audit\": []") != std::string::npos);
    CHECK(slurp(out / "grid.svg").find("<svg") != std::string::npos);
}

TEST_CASE("strategies compares the three injection modes") {
    fs::path dir = scratch_dir();
    fs::path cfg = dir / "config.json";
    spit(cfg, "{\"compositional\": {\"n_pairs\": 2}}\n");
    fs::path out = dir / "run";

    ToolRun r = run_tool("strategies --config " + cfg.string() + " --out " + out.string());
    CHECK(r.code == 0);
    for (const char* name : {"strategies.csv", "strategies.svg", "strategies_meta.json"})
        CHECK_MESSAGE(fs::exists(out / name), name);
    std::string csv = slurp(out / "strategies.csv");
    CHECK(count_lines(csv) == 19);  // header + 6 roles x 3 strategies
    for (const char* s : {"natural", "classic", "subtask"})
        CHECK(csv.find(s) != std::string::npos);
    // The toy model's subtask injection is perfect at the encoding layer.
    CHECK(csv.find("key_1,subtask,1,2,0") != std::string::npos);
    CHECK(csv.find("key_1,natural,0,2,0") != std::string::npos);
}

TEST_CASE("dataset validate flags an episode-grade bundle and passes a full one") {
    ToolRun bad = run_tool("dataset validate --tasks " + fixture_path());
    CHECK(bad.code == 1);
    CHECK(bad.out.find("pair-count") != std::string::npos);
    CHECK(bad.err.find("2 records, 2 with violations") != std::string::npos);

    // A 30-pair record passes dataset grade.
    taskvec::dataset::TaskRecord t;
    t.instruction = "Translate the word into French.";
    t.category = "translate";
    t.source = taskvec::dataset::Source::synthetic;
    t.generator = "hand-written";
    for (int i = 0; i < 30; ++i)
        t.pairs.push_back({"word " + std::to_string(i), "mot " + std::to_string(i)});
    t.task_id = taskvec::dataset::make_task_id(t.instruction);
    taskvec::dataset::TaskSet set;
    set.tasks.push_back(t);
    set.manifest = taskvec::dataset::tally_categories(set);
    fs::path bundle = scratch_dir() / "full.jsonl";
    taskvec::dataset::save_taskset(set, bundle.string());

    ToolRun good = run_tool("dataset validate --tasks " + bundle.string());
    CHECK(good.code == 0);
    CHECK(good.err.find("1 records, 0 with violations") != std::string::npos);
}

TEST_CASE("dataset validate without a bundle is a config error") {
    ToolRun r = run_tool("dataset validate");
    CHECK(r.code == 2);
    CHECK(r.err.find("\"type\":\"config\"") != std::string::npos);
}

TEST_CASE("dataset stats prints the category table and can persist it") {
    ToolRun r = run_tool("dataset stats --tasks " + fixture_path());
    CHECK(r.code == 0);
    CHECK(r.out.find("classify 1") != std::string::npos);
    CHECK(r.out.find("rewrite 1") != std::string::npos);

    fs::path out = scratch_dir() / "run";
    ToolRun saved =
        run_tool("dataset stats --tasks " + fixture_path() + " --out " + out.string());
    CHECK(saved.code == 0);
    std::string csv = slurp(out / "stats.csv");
    CHECK(csv.rfind("category,count\n", 0) == 0);
    CHECK(csv.find("classify,1") != std::string::npos);
}

TEST_CASE("dataset filter requires an input file") {
    ToolRun r = run_tool("dataset filter");
    CHECK(r.code == 2);
    CHECK(r.err.find("\"type\":\"config\"") != std::string::npos);
    CHECK(r.err.find("--input") != std::string::npos);
}

TEST_CASE("dataset generate in replay mode degrades cleanly on an empty fixture dir") {
    fs::path dir = scratch_dir();
    fs::path fixtures = dir / "fixtures";
    fs::create_directories(fixtures);
    fs::path entries = dir / "entries.json";
    spit(entries,
         "[{\"instruction\": \"Translate the word.\", \"input\": \"cat\"},"
         " {\"instruction\": \"Classify the tone.\", \"input\": \"fine.\"}]\n");
    fs::path cfg = dir / "config.json";
    spit(cfg, "{\"pipeline\": {\"client\": {\"mode\": \"replay\", \"fixture_dir\": \"" +
                  fixtures.string() + "\"}}}\n");
    fs::path out = dir / "run";

    ToolRun r = run_tool("dataset generate --config " + cfg.string() + " --input " +
                         entries.string() + " --out " + out.string());
    CHECK(r.code == 0);
    CHECK(fs::exists(out / "taskset.jsonl"));
    std::string bundle = slurp(out / "taskset.jsonl");
    CHECK(bundle.rfind("{\"version\":\"1\",\"manifest\":{}}", 0) == 0);
    std::string report = slurp(out / "report.jsonl");
    CHECK(report.find("chunk-failed") != std::string::npos);
    CHECK(report.find("\"records_kept\":0") != std::string::npos);
}

TEST_CASE("config mistakes exit with the config code") {
    fs::path dir = scratch_dir();

    fs::path typo = dir / "typo.json";
    spit(typo, "{\"episodes\": 3}\n");
    ToolRun r1 = run_tool("sweep --config " + typo.string() + " --out " + (dir / "a").string());
    CHECK(r1.code == 2);
    CHECK(r1.err.find("unknown key") != std::string::npos);

    fs::path broken = dir / "broken.json";
    spit(broken, "{\"episodes_per_task\": \n");
    ToolRun r2 =
        run_tool("sweep --config " + broken.string() + " --out " + (dir / "b").string());
    CHECK(r2.code == 2);

    ToolRun r3 = run_tool("sweep --backend quantum --out " + (dir / "c").string());
    CHECK(r3.code == 2);

    ToolRun r4 = run_tool("sweep --judge vibes --out " + (dir / "d").string());
    CHECK(r4.code == 2);

    fs::path missing = dir / "nope.json";
    ToolRun r5 =
        run_tool("sweep --config " + missing.string() + " --out " + (dir / "e").string());
    CHECK(r5.code == 2);
}
