#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "taskvec/backend/toy.hpp"
#include "taskvec/backend/toy_layout.hpp"
#include "taskvec/common/errors.hpp"
#include "taskvec/experiments/regions.hpp"
#include "taskvec/experiments/results.hpp"
#include "taskvec/experiments/sweep.hpp"
#include "taskvec/judge/judge.hpp"

using namespace taskvec;
using namespace taskvec::experiments;
namespace layout = taskvec::backend::toy;

namespace {

EpisodeResult make_row(const std::string& task_id, Condition c, int layer, int format,
                       int correctness) {
    EpisodeResult r;
    r.task_id = task_id;
    r.category = "letters";
    r.condition = c;
    r.layer = layer;
    r.scores = {format, correctness};
    return r;
}

// Judge that refuses to score the zero-shot-shaped answer, to exercise the
// failed-row paths.
class AllergicJudge : public judge::Judge {
public:
    judge::ScorePair score(const judge::JudgeRequest& request) override {
        if (request.submission.find('?') != std::string::npos)
            throw judging_error("cannot stand question marks", {request.submission});
        return judge::oracle_judge(request);
    }
    std::string kind() const override { return "allergic"; }
};

}  // namespace

TEST_CASE("condition labels round trip") {
    for (Condition c : {Condition::zero_shot, Condition::few_shot, Condition::task_vector}) {
        CHECK(condition_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(condition_from_string("mystery"), parse_error);
}

TEST_CASE("aggregation averages the succeeding rows only") {
    std::vector<EpisodeResult> rows;
    rows.push_back(make_row("t1", Condition::zero_shot, -1, 10, 0));
    rows.push_back(make_row("t1", Condition::zero_shot, -1, 0, 0));
    rows.push_back(make_row("t1", Condition::few_shot, -1, 10, 10));
    rows.push_back(make_row("t1", Condition::task_vector, 2, 10, 10));
    rows.push_back(make_row("t1", Condition::task_vector, 2, 10, 5));
    rows.push_back(make_row("t1", Condition::task_vector, 0, 10, 0));
    EpisodeResult bad = make_row("t1", Condition::task_vector, 2, 0, 0);
    bad.failed = true;
    bad.error = "backend exploded";
    rows.push_back(bad);

    SweepSummary s = aggregate(rows, 1, 2, 0.1);
    CHECK(s.rows_processed == 7);
    CHECK(s.rows_failed == 1);
    CHECK(s.failure_flag == true);  // 1/7 > 0.1
    CHECK(s.zero_shot.n == 2);
    CHECK(s.zero_shot.format == 5.0);
    CHECK(s.zero_shot.correctness == 0.0);
    CHECK(s.few_shot.correctness == 10.0);
    CHECK(s.per_layer.at(2).n == 2);
    CHECK(s.per_layer.at(2).correctness == 7.5);
    CHECK(s.per_layer.at(0).correctness == 0.0);
    CHECK(s.per_layer_category.at(2).at("letters").n == 2);

    SweepSummary relaxed = aggregate(rows, 1, 2, 0.5);
    CHECK(relaxed.failure_flag == false);
}

TEST_CASE("rows serialize to jsonl and parse back") {
    std::vector<EpisodeResult> rows;
    rows.push_back(make_row("t1", Condition::zero_shot, -1, 10, 0));
    EpisodeResult failed = make_row("t2", Condition::task_vector, 3, 0, 0);
    failed.failed = true;
    failed.error = "no tokens";
    failed.output = "partial";
    rows.push_back(failed);

    std::string text = serialize_rows(rows);
    CHECK(text == serialize_rows(rows));
    auto back = parse_rows_jsonl(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].task_id == "t1");
    CHECK(back[0].condition == Condition::zero_shot);
    CHECK(back[0].scores.format == 10);
    CHECK(back[1].failed);
    CHECK(back[1].error == "no tokens");
    CHECK(back[1].layer == 3);
    CHECK(serialize_rows(back) == text);

    CHECK_THROWS_AS(parse_rows_jsonl("not json\n"), parse_error);
}

TEST_CASE("summaries serialize with every section") {
    SweepSummary s = aggregate({make_row("t", Condition::task_vector, 1, 10, 9)}, 1, 1, 0.1);
    std::string j = serialize_summary(s);
    CHECK(j.find("\"per_layer\"") != std::string::npos);
    CHECK(j.find("\"zero_shot\"") != std::string::npos);
    CHECK(j.find("\"failure_flag\"") != std::string::npos);
}

TEST_CASE("the toy sweep peaks exactly at the encoding layer") {
    backend::ToyBackend b;
    dataset::TaskSet set = backend::toy_letter_taskset();
    judge::OracleJudge judge;

    SweepOptions options;
    options.episodes_per_task = 3;
    options.seed = 7;
    SweepResult r = run_layer_sweep(set, b, judge, options);

    // per episode: zero-shot, few-shot, one task-vector row per layer
    size_t expected_rows = set.tasks.size() * options.episodes_per_task *
                           (2 + static_cast<size_t>(b.num_layers()));
    CHECK(r.rows.size() == expected_rows);
    CHECK(r.summary.rows_processed == expected_rows);
    CHECK(r.summary.rows_failed == 0);
    CHECK_FALSE(r.summary.failure_flag);

    CHECK(r.summary.few_shot.correctness == 10.0);
    CHECK(r.summary.few_shot.format == 10.0);
    CHECK(r.summary.zero_shot.correctness == 0.0);
    CHECK(r.summary.zero_shot.format == 10.0);  // " ??" is still label-shaped

    REQUIRE(r.summary.per_layer.size() == 5);
    CHECK(r.summary.per_layer.at(layout::kEncodingLayer).correctness == 10.0);
    for (const auto& [layer, mean] : r.summary.per_layer) {
        if (layer != layout::kEncodingLayer) CHECK(mean.correctness == 0.0);
    }

    // those means cover every category, 4 letter tasks each
    const auto& at_peak = r.summary.per_layer_category.at(layout::kEncodingLayer);
    CHECK(at_peak.size() == 4);
    for (const auto& [cat, mean] : at_peak) {
        CHECK(mean.n == options.episodes_per_task);
        CHECK(mean.correctness == 10.0);
    }
}

TEST_CASE("sweeps are deterministic row for row") {
    backend::ToyBackend b;
    dataset::TaskSet set = backend::toy_letter_taskset();
    judge::OracleJudge judge;
    SweepOptions options;
    options.episodes_per_task = 2;
    options.seed = 11;
    SweepResult first = run_layer_sweep(set, b, judge, options);
    SweepResult second = run_layer_sweep(set, b, judge, options);
    CHECK(serialize_rows(first.rows) == serialize_rows(second.rows));
    CHECK(serialize_summary(first.summary) == serialize_summary(second.summary));
}

TEST_CASE("fixing one layer matches the corresponding sweep slice") {
    backend::ToyBackend b;
    dataset::TaskSet set = backend::toy_letter_taskset();
    judge::OracleJudge judge;
    SweepOptions options;
    options.episodes_per_task = 2;
    options.seed = 3;

    SweepResult fixed = fix_layer_and_run(set, b, judge, layout::kEncodingLayer, options);
    REQUIRE(fixed.summary.per_layer.size() == 1);
    CHECK(fixed.summary.per_layer.count(layout::kEncodingLayer) == 1);
    CHECK(fixed.summary.per_layer.at(layout::kEncodingLayer).correctness == 10.0);

    options.layers = {layout::kEncodingLayer};
    SweepResult manual = run_layer_sweep(set, b, judge, options);
    CHECK(serialize_rows(fixed.rows) == serialize_rows(manual.rows));

    CHECK_THROWS_AS(fix_layer_and_run(set, b, judge, 9, options), spec_error);
    CHECK_THROWS_AS(fix_layer_and_run(set, b, judge, -1, options), spec_error);
}

TEST_CASE("sweep options are validated") {
    backend::ToyBackend b;
    dataset::TaskSet set = backend::toy_letter_taskset();
    judge::OracleJudge judge;
    SweepOptions options;
    options.layers = {0, 7};
    CHECK_THROWS_AS(run_layer_sweep(set, b, judge, options), spec_error);

    dataset::TaskSet thin = set;
    thin.tasks[0].pairs.resize(5);
    thin.manifest = dataset::tally_categories(thin);
    options.layers.clear();
    CHECK_THROWS_AS(run_layer_sweep(thin, b, judge, options), spec_error);
}

TEST_CASE("judge failures mark rows and trip the failure flag") {
    backend::ToyBackend b;
    dataset::TaskSet set = backend::toy_letter_taskset();
    AllergicJudge judge;
    SweepOptions options;
    options.episodes_per_task = 2;
    options.seed = 5;
    SweepResult r = run_layer_sweep(set, b, judge, options);

    // the zero-shot answer and every injection outside the encoding layer
    // carry a question mark, so five of the seven rows per episode fail
    size_t episodes = set.tasks.size() * options.episodes_per_task;
    CHECK(r.summary.rows_failed == episodes * 5);
    CHECK(r.summary.failure_flag);
    CHECK(r.summary.zero_shot.n == 0);
    CHECK(r.summary.few_shot.n == episodes);
    REQUIRE(r.summary.per_layer.size() == 1);
    CHECK(r.summary.per_layer.at(layout::kEncodingLayer).correctness == 10.0);
    for (const auto& row : r.rows) {
        if (row.failed) {
            CHECK(row.error.find("question marks") != std::string::npos);
        }
    }
}

TEST_CASE("region analysis places tasks by boost and deficit") {
    std::vector<EpisodeResult> rows;
    auto add_task = [&](const std::string& id, int zs, int fs, int tv) {
        for (int i = 0; i < 2; ++i) {
            rows.push_back(make_row(id, Condition::zero_shot, -1, 10, zs));
            rows.push_back(make_row(id, Condition::few_shot, -1, 10, fs));
            rows.push_back(make_row(id, Condition::task_vector, 2, 10, tv));
            rows.push_back(make_row(id, Condition::task_vector, 0, 10, 0));  // other layer
        }
    };
    add_task("strong", 0, 10, 9);   // boost 9, deficit 1 -> region 1
    add_task("weak", 0, 10, 0);     // boost 0, deficit 10 -> region 2
    add_task("middle", 0, 10, 7);   // boost 7, deficit 3 -> unlabeled

    EpisodeResult orphan = make_row("broken", Condition::few_shot, -1, 10, 10);
    rows.push_back(orphan);

    RegionAnalysis analysis = region_analysis(rows, 2);
    CHECK(analysis.layer == 2);
    REQUIRE(analysis.points.size() == 3);
    for (const auto& p : analysis.points) {
        if (p.task_id == "strong") {
            CHECK(p.region == "1");
            CHECK(p.boost == 9.0);
            CHECK(p.deficit == 1.0);
        } else if (p.task_id == "weak") {
            CHECK(p.region == "2");
        } else {
            CHECK(p.region == "");
        }
    }
    REQUIRE(analysis.skipped.size() == 1);
    CHECK(analysis.skipped[0] == "broken");

    std::string csv = region_points_csv(analysis);
    CHECK(csv.find("task_id") != std::string::npos);
    CHECK(csv.find("strong") != std::string::npos);
}

TEST_CASE("region thresholds are honoured") {
    std::vector<EpisodeResult> rows;
    rows.push_back(make_row("edge", Condition::zero_shot, -1, 10, 0));
    rows.push_back(make_row("edge", Condition::few_shot, -1, 10, 10));
    rows.push_back(make_row("edge", Condition::task_vector, 1, 10, 4));

    RegionThresholds strict;
    strict.r1_min_boost = 4.0;
    strict.r1_max_deficit = 6.0;
    RegionAnalysis a = region_analysis(rows, 1, strict);
    REQUIRE(a.points.size() == 1);
    CHECK(a.points[0].region == "1");  // boost 4 >= 4, deficit 6 <= 6

    strict.r1_min_boost = 4.1;
    RegionAnalysis b = region_analysis(rows, 1, strict);
    CHECK(b.points[0].region == "");
}