#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "taskvec/backend/toy.hpp"
#include "taskvec/backend/toy_layout.hpp"
#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"
#include "taskvec/engine/episodes.hpp"
#include "taskvec/engine/task_vector.hpp"
#include "taskvec/engine/template.hpp"

using namespace taskvec;
using namespace taskvec::engine;
namespace layout = taskvec::backend::toy;

namespace {

std::vector<dataset::ExamplePair> upper_shots() {
    return {{"a", "AA"}, {"b", "BB"}, {"c", "CC"}};
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("/tmp/taskvec_engine_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("few-shot rendering joins demos and query") {
    backend::ToyBackend b;
    RenderedPrompt p = render_fewshot(b, upper_shots(), "d");
    CHECK(p.text == "a -> AA\nb -> BB\nc -> CC\nd ->");
    CHECK(p.tokens.size() == p.offsets.size());
    CHECK(p.separator_position == p.tokens.size() - 1);
    CHECK(p.tokens.ids.back() == layout::kSpaceArrow);
    CHECK(p.separator_span.first == p.tokens.size() - 1);
    CHECK(p.separator_span.second == p.tokens.size());
}

TEST_CASE("zero-shot rendering is the bare query line") {
    backend::ToyBackend b;
    RenderedPrompt p = render_zeroshot(b, "d");
    CHECK(p.text == "d ->");
    CHECK(p.separator_position == p.tokens.size() - 1);
    REQUIRE(p.tokens.ids.size() == 2);
    CHECK(p.tokens.ids[0] == layout::kLowerBase + 3);
    CHECK(p.tokens.ids[1] == layout::kSpaceArrow);
}

TEST_CASE("rendering rejects blank fields") {
    backend::ToyBackend b;
    CHECK_THROWS_AS(render_zeroshot(b, "   "), spec_error);
    CHECK_THROWS_AS(render_fewshot(b, {{"a", " "}}, "b"), spec_error);
    CHECK_THROWS_AS(render_fewshot(b, {{"", "AA"}}, "b"), spec_error);
}

TEST_CASE("rendering rejects prompts where the separator count is off") {
    backend::ToyBackend b;
    // query smuggles in an extra separator occurrence
    CHECK_THROWS_AS(render_zeroshot(b, "a -> b"), template_error);
    CHECK_THROWS_AS(render_fewshot(b, {{"a -> x", "AA"}}, "b"), template_error);
    // template without any separator in its formats
    PromptTemplate bare;
    bare.pair_format = "{input} {output}";
    bare.query_format = "{input}";
    CHECK_THROWS_AS(render_fewshot(b, upper_shots(), "d", bare), template_error);
}

TEST_CASE("a custom separator works when every occurrence tokenizes alike") {
    backend::ToyBackend b;
    PromptTemplate tmpl;
    tmpl.pair_format = "{input} => {output}";
    tmpl.query_format = "{input} =>";
    tmpl.separator = "=>";
    RenderedPrompt p = render_fewshot(b, upper_shots(), "d", tmpl);
    CHECK(p.text == "a => AA\nb => BB\nc => CC\nd =>");
    // the toy vocabulary has no "=>" token, so the occurrence is a run of
    // unknown tokens; the span still lands on the final occurrence
    size_t begin = p.separator_span.first;
    CHECK(p.separator_position == p.tokens.size() - 1);
    CHECK(begin < p.tokens.size());
    CHECK(p.offsets[p.separator_position].second == p.text.size());
}

TEST_CASE("locate_token_span matches exact and whitespace-led ranges") {
    backend::ToyBackend b;
    std::string text = "a -> AA";
    auto [toks, offsets] = b.tokenize_with_offsets(text);
    // "AA" is the two tokens ' A' and 'A'; its span may open on the space
    size_t begin = text.find("AA");
    auto span = locate_token_span(text, offsets, begin, begin + 2);
    CHECK(span.second - span.first == 2);
    CHECK(offsets[span.second - 1].second == begin + 2);
    CHECK(offsets[span.first].first == begin - 1);  // leading space absorbed

    // a span may not open inside a token across non-whitespace
    std::string tag = "color a";
    auto [ttoks, toffsets] = b.tokenize_with_offsets(tag);
    CHECK_THROWS_AS(locate_token_span(tag, toffsets, 1, 5), template_error);
    // nor end mid-token
    CHECK_THROWS_AS(locate_token_span(tag, toffsets, 0, 3), template_error);
    // empty or out-of-range requests are refused
    CHECK_THROWS_AS(locate_token_span(tag, toffsets, 2, 2), template_error);
    CHECK_THROWS_AS(locate_token_span(tag, toffsets, 0, tag.size() + 1), template_error);
}

TEST_CASE("episode sampling is deterministic and well formed") {
    dataset::TaskRecord task;
    task.task_id = "letters-upper";
    task.instruction = "Uppercase the given letter and write it twice.";
    for (char c = 'a'; c <= 'j'; ++c) {
        task.pairs.push_back({std::string(1, c), layout::letter_task_output(0, c)});
    }

    auto first = sample_episodes(task, 12, 7, 99);
    auto second = sample_episodes(task, 12, 7, 99);
    REQUIRE(first.size() == 12);
    for (size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].shot_indices == second[i].shot_indices);
        CHECK(first[i].test_index == second[i].test_index);
        CHECK(first[i].seed == second[i].seed);

        std::set<size_t> seen(first[i].shot_indices.begin(), first[i].shot_indices.end());
        CHECK(seen.size() == 7);
        CHECK(seen.count(first[i].test_index) == 0);
        for (size_t idx : seen) CHECK(idx < task.pairs.size());
    }

    auto other_seed = sample_episodes(task, 12, 7, 100);
    bool any_difference = false;
    for (size_t i = 0; i < first.size(); ++i) {
        if (first[i].shot_indices != other_seed[i].shot_indices ||
            first[i].test_index != other_seed[i].test_index) {
            any_difference = true;
        }
    }
    CHECK(any_difference);

    CHECK_THROWS_AS(sample_episodes(task, 1, task.pairs.size(), 1), spec_error);

    auto shots = episode_shots(task, first[0]);
    REQUIRE(shots.size() == 7);
    for (size_t i = 0; i < shots.size(); ++i) {
        CHECK(shots[i].input == task.pairs[first[0].shot_indices[i]].input);
    }
}

TEST_CASE("episode draws differ across tasks at the same seed") {
    dataset::TaskRecord a;
    a.task_id = "first-task";
    dataset::TaskRecord c;
    c.task_id = "second-task";
    for (char ch = 'a'; ch <= 'j'; ++ch) {
        a.pairs.push_back({std::string(1, ch), "x"});
        c.pairs.push_back({std::string(1, ch), "x"});
    }
    auto ea = sample_episodes(a, 6, 7, 42);
    auto ec = sample_episodes(c, 6, 7, 42);
    bool differs = false;
    for (size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].shot_indices != ec[i].shot_indices || ea[i].test_index != ec[i].test_index)
            differs = true;
    }
    CHECK(differs);
}

TEST_CASE("task vector extraction records provenance") {
    backend::ToyBackend b;
    RenderedPrompt fs = render_fewshot(b, upper_shots(), "d");
    backend::HiddenCapture cap = b.forward_capture(fs.tokens, {});
    TaskVector tv = extract_task_vector(cap, fs, layout::kEncodingLayer);
    CHECK(tv.layer == layout::kEncodingLayer);
    CHECK(tv.source_position == fs.separator_position);
    CHECK(tv.source_prompt_hash == content_hash(fs.text));
    CHECK(tv.separator_token_span == fs.separator_span);
    CHECK((tv.vector - cap.state(layout::kEncodingLayer, fs.separator_position))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    CHECK_THROWS_AS(extract_task_vector(cap, fs, -1), spec_error);
    CHECK_THROWS_AS(extract_task_vector(cap, fs, b.num_layers()), spec_error);
    RenderedPrompt other = render_zeroshot(b, "d");
    CHECK_THROWS_AS(extract_task_vector(cap, other, 0), spec_error);
}

TEST_CASE("injection reproduces the few-shot answer at the encoding layer") {
    backend::ToyBackend b;
    std::vector<dataset::ExamplePair> shots;
    for (char c = 'a'; c <= 'g'; ++c) {
        shots.push_back({std::string(1, c), layout::letter_task_output(layout::kTaskNext, c)});
    }
    RenderedPrompt fs = render_fewshot(b, shots, "h");
    backend::HiddenCapture cap = b.forward_capture(fs.tokens, {});
    TaskVector tv = extract_task_vector(cap, fs, layout::kEncodingLayer);

    RenderedPrompt zs = render_zeroshot(b, "h");
    backend::GenerationParams params;
    backend::GenerationResult out = inject_and_generate(b, zs, tv, params);
    CHECK(backend::output_text(out, params) == " ii");

    TaskVector narrow = tv;
    narrow.vector = backend::Vec::Zero(3);
    CHECK_THROWS_AS(inject_and_generate(b, zs, narrow, params), spec_error);
}

TEST_CASE("task vectors survive a save and load round trip bit for bit") {
    TempPath file("tv.json");
    TaskVector tv;
    tv.layer = 3;
    tv.source_position = 17;
    tv.source_prompt_hash = "74c1a5d1e0f2a3b4";
    tv.separator_token_span = {16, 18};
    tv.vector = backend::Vec(6);
    tv.vector << 0.1, -1.0 / 3.0, 1e-300, -2.5e17, 0.0, 7.0;

    save_task_vector(tv, file.path);
    TaskVector back = load_task_vector(file.path);
    CHECK(back.layer == tv.layer);
    CHECK(back.source_position == tv.source_position);
    CHECK(back.source_prompt_hash == tv.source_prompt_hash);
    CHECK(back.separator_token_span == tv.separator_token_span);
    REQUIRE(back.vector.size() == tv.vector.size());
    for (long i = 0; i < tv.vector.size(); ++i) {
        CHECK(back.vector[i] == tv.vector[i]);
    }
}

TEST_CASE("loading a broken task vector file reports a parse error") {
    CHECK_THROWS_AS(load_task_vector("/tmp/taskvec_engine_missing.json"), error);
    TempPath file("broken.json");
    {
        FILE* f = std::fopen(file.path.c_str(), "wb");
        REQUIRE(f != nullptr);
        std::fputs("{\"layer\": 1", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_task_vector(file.path), parse_error);
    {
        FILE* f = std::fopen(file.path.c_str(), "wb");
        REQUIRE(f != nullptr);
        std::fputs("{\"layer\": 1}", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_task_vector(file.path), parse_error);
}
