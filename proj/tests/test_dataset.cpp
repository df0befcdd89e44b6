#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"
#include "taskvec/dataset/bundle.hpp"
#include "taskvec/dataset/types.hpp"

using namespace taskvec;
using namespace taskvec::dataset;

namespace {

TaskRecord make_task(const std::string& instruction, size_t n_pairs) {
    TaskRecord t;
    t.instruction = instruction;
    t.task_id = make_task_id(instruction);
    t.category = derive_category(instruction);
    t.source = Source::synthetic;
    t.generator = "unit-test";
    for (size_t i = 0; i < n_pairs; ++i) {
        t.pairs.push_back({"input " + std::to_string(i), "output " + std::to_string(i)});
    }
    return t;
}

TaskSet make_set(std::vector<TaskRecord> tasks) {
    TaskSet set;
    set.tasks = std::move(tasks);
    set.manifest = tally_categories(set);
    return set;
}

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
    for (const auto& v : vs) {
        if (v.code == code) return true;
    }
    return false;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("/tmp/taskvec_dataset_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("categories come from the first instruction word") {
    CHECK(derive_category("Translate the sentence to French.") == "translate");
    CHECK(derive_category("  classify the sentiment") == "classify");
    CHECK(derive_category("\"Summarize:\" the text") == "summarize");
    CHECK(derive_category("Re-write the text formally.") == "re-write");
    CHECK(derive_category("UPPERCASE the letters") == "uppercase");
    CHECK_THROWS_AS(derive_category(""), spec_error);
    CHECK_THROWS_AS(derive_category("   "), spec_error);
    CHECK_THROWS_AS(derive_category("??? what"), spec_error);
}

TEST_CASE("task ids are stable content hashes of the instruction") {
    std::string a = make_task_id("Translate the sentence.");
    CHECK(a == make_task_id("Translate the sentence."));
    CHECK(a != make_task_id("Translate the sentence"));
    CHECK(a.size() == 16);
    CHECK(a == content_hash("Translate the sentence."));
}

TEST_CASE("source labels round trip") {
    for (Source s : {Source::alpaca_derived, Source::synthetic, Source::fixture}) {
        CHECK(source_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(source_from_string("mystery"), parse_error);
}

TEST_CASE("validation flags each defect with a code") {
    TaskRecord t = make_task("Translate the words.", 30);
    CHECK(validate_task(t, Grade::dataset).empty());
    CHECK(validate_task(t, Grade::episode).empty());

    TaskRecord small = make_task("Translate the words.", 8);
    CHECK(validate_task(small, Grade::episode).empty());
    CHECK(has_code(validate_task(small, Grade::dataset), "pair-count"));

    TaskRecord blank = small;
    blank.instruction = "  ";
    CHECK(has_code(validate_task(blank, Grade::episode), "empty-instruction"));

    TaskRecord dupes = small;
    dupes.pairs[3].input = " input 1 ";  // trims to a repeat
    auto vs = validate_task(dupes, Grade::episode);
    REQUIRE(has_code(vs, "duplicate-input"));
    for (const auto& v : vs) {
        if (v.code == "duplicate-input") CHECK(v.pair_index == size_t{3});
    }

    TaskRecord empties = small;
    empties.pairs[1].input = "";
    empties.pairs[2].output = "\t";
    CHECK(has_code(validate_task(empties, Grade::episode), "empty-input"));
    CHECK(has_code(validate_task(empties, Grade::episode), "empty-output"));

    TaskRecord drift = small;
    drift.category = "other";
    CHECK(has_code(validate_task(drift, Grade::episode), "category-mismatch"));
}

TEST_CASE("category buckets fold the tail into other") {
    TaskSet set = make_set({
        make_task("Translate a", 1), make_task("Translate b", 1), make_task("Translate c", 1),
        make_task("Classify a", 1), make_task("Classify b", 1),
        make_task("Summarize a", 1),
        make_task("Rewrite a", 1),
    });
    auto buckets = bucket_categories(set, 2);
    REQUIRE(buckets.size() == 3);
    CHECK(buckets.at("translate") == 3);
    CHECK(buckets.at("classify") == 2);
    CHECK(buckets.at("other") == 2);

    // ties rank lexicographically: rewrite beats summarize at count 1
    auto three = bucket_categories(set, 3);
    CHECK(three.count("rewrite") == 1);
    CHECK(three.count("summarize") == 0);
    CHECK(three.at("other") == 1);

    // no remainder, no "other"
    auto all = bucket_categories(set, 10);
    CHECK(all.count("other") == 0);
    CHECK(all == tally_categories(set));
}

TEST_CASE("task sets serialize deterministically and round trip") {
    TaskSet set = make_set({make_task("Translate the words.", 8),
                            make_task("Classify the tone.", 8)});
    std::string bytes = serialize_taskset(set);
    CHECK(bytes == serialize_taskset(set));
    CHECK(bytes.substr(0, 12) == "{\"version\":\"");

    TaskSet back = parse_taskset(bytes);
    CHECK(serialize_taskset(back) == bytes);
    REQUIRE(back.tasks.size() == 2);
    CHECK(back.tasks[0].instruction == "Translate the words.");
    CHECK(back.tasks[0].source == Source::synthetic);
    CHECK(back.tasks[0].generator == "unit-test");
    CHECK(back.manifest == set.manifest);
}

TEST_CASE("task set files survive a save and load") {
    TempPath file("roundtrip.jsonl");
    TaskSet set = make_set({make_task("Translate the words.", 8)});
    save_taskset(set, file.path);
    TaskSet back = load_taskset(file.path);
    CHECK(serialize_taskset(back) == serialize_taskset(set));
    CHECK_THROWS_AS(load_taskset("/tmp/taskvec_dataset_does_not_exist.jsonl"), error);
}

TEST_CASE("parsing rejects malformed bundles with line numbers") {
    CHECK_THROWS_AS(parse_taskset(""), parse_error);
    CHECK_THROWS_AS(parse_taskset("not json\n"), parse_error);
    CHECK_THROWS_AS(parse_taskset("{\"no\":\"manifest\"}\n"), parse_error);

    TaskSet set = make_set({make_task("Translate the words.", 8)});
    std::string good = serialize_taskset(set);

    try {
        parse_taskset(good + "broken\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("parsing enforces structural integrity") {
    TaskRecord a = make_task("Translate the words.", 8);
    TaskSet dup = make_set({a, a});
    CHECK_THROWS_AS(parse_taskset(serialize_taskset(dup)), integrity_error);

    TaskSet drift = make_set({make_task("Translate the words.", 8)});
    drift.manifest["translate"] = 2;
    CHECK_THROWS_AS(parse_taskset(serialize_taskset(drift)), integrity_error);

    TaskSet wrong_cat = make_set({make_task("Translate the words.", 8)});
    wrong_cat.tasks[0].category = "other";
    wrong_cat.manifest = tally_categories(wrong_cat);
    CHECK_THROWS_AS(parse_taskset(serialize_taskset(wrong_cat)), integrity_error);
}

TEST_CASE("pair-count grading happens only when a grade is requested") {
    TaskSet set = make_set({make_task("Translate the words.", 8)});
    std::string bytes = serialize_taskset(set);
    CHECK_NOTHROW(parse_taskset(bytes));
    CHECK_NOTHROW(parse_taskset(bytes, Grade::episode));
    CHECK_THROWS_AS(parse_taskset(bytes, Grade::dataset), integrity_error);
}
