#include "taskvec/compositional/prompt.hpp"

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::compositional {

const char* role_name(Role role) {
    switch (role) {
        case Role::key_1: return "key_1";
        case Role::key_2: return "key_2";
        case Role::key_3: return "key_3";
        case Role::value_1: return "value_1";
        case Role::value_2: return "value_2";
        case Role::value_3: return "value_3";
    }
    throw spec_error("unknown role");
}

size_t TargetTokens::role_step(Role role) const {
    switch (role) {
        case Role::key_1: return key_token_spans[0].begin;
        case Role::key_2: return key_token_spans[1].begin;
        case Role::key_3: return key_token_spans[2].begin;
        case Role::value_1: return value_token_spans[0].begin;
        case Role::value_2: return value_token_spans[1].begin;
        case Role::value_3: return value_token_spans[2].begin;
    }
    throw spec_error("unknown role");
}

TargetTokens resolve_target(const backend::Backend& b, const JsonTarget& target) {
    TargetTokens out;
    auto [tokens, offsets] = b.tokenize_with_offsets(target.text);
    out.tokens = std::move(tokens);
    for (size_t i = 0; i < 3; ++i) {
        auto ks = engine::locate_token_span(target.text, offsets, target.key_spans[i].begin,
                                            target.key_spans[i].end);
        out.key_token_spans[i] = {ks.first, ks.second};
        auto vs = engine::locate_token_span(target.text, offsets, target.value_spans[i].begin,
                                            target.value_spans[i].end);
        out.value_token_spans[i] = {vs.first, vs.second};
    }
    return out;
}

namespace {

size_t sole_placeholder(const std::string& fmt, const std::string& name) {
    size_t pos = fmt.find(name);
    if (pos == std::string::npos)
        throw template_error("pair format is missing " + name);
    if (fmt.find(name, pos + 1) != std::string::npos)
        throw template_error("pair format repeats " + name);
    return pos;
}

bool same_record(const CarRecord& a, const CarRecord& b) {
    return a.color == b.color && a.city == b.city && a.model == b.model && a.filler == b.filler;
}

}  // namespace

CompositionalPrompt build_compositional_prompt(const backend::Backend& b,
                                               const std::vector<CarRecord>& records,
                                               const engine::PromptTemplate& tmpl,
                                               DescriptionStyle style) {
    if (records.size() != 8)
        throw spec_error("compositional prompt needs exactly 8 records, got " +
                         std::to_string(records.size()));
    for (size_t i = 0; i < records.size(); ++i)
        for (size_t j = i + 1; j < records.size(); ++j)
            if (same_record(records[i], records[j]))
                throw spec_error("records " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are identical");

    std::vector<dataset::ExamplePair> shots;
    for (size_t i = 0; i < 7; ++i)
        shots.push_back({render_description(records[i], style), render_json(records[i]).text});
    const std::string query = render_description(records[7], style);

    CompositionalPrompt out;
    out.fewshot = engine::render_fewshot(b, shots, query, tmpl);
    out.zeroshot = engine::render_zeroshot(b, query, tmpl);
    out.demo7_json = render_json(records[6]);
    out.target = render_json(records[7]);
    out.reference = resolve_target(b, out.target);

    // Recompute the text assembly to find where demo 7's output starts. The
    // layout mirrors render_fewshot exactly; the equality check below catches
    // any drift between the two.
    size_t out_pos = sole_placeholder(tmpl.pair_format, "{output}");
    sole_placeholder(tmpl.pair_format, "{input}");
    std::string text;
    for (size_t i = 0; i < shots.size(); ++i) {
        std::string filled = tmpl.pair_format;
        filled = replace_all(filled, "{input}", shots[i].input);
        filled = replace_all(filled, "{output}", shots[i].output);
        if (i == 6) {
            std::string prefix = tmpl.pair_format.substr(0, out_pos);
            prefix = replace_all(prefix, "{input}", shots[i].input);
            out.demo7_text_begin = text.size() + prefix.size();
        }
        text += filled;
        text += tmpl.pair_joiner;
    }
    text += replace_all(tmpl.query_format, "{input}", query);
    if (text != out.fewshot.text)
        throw integrity_error("compositional prompt assembly diverged from render_fewshot");

    auto span = engine::locate_token_span(out.fewshot.text, out.fewshot.offsets,
                                          out.demo7_text_begin,
                                          out.demo7_text_begin + out.demo7_json.text.size());
    out.demo7_output_span = {span.first, span.second};
    return out;
}

size_t align_subtask_source(const CompositionalPrompt& prompt, Role role) {
    size_t offset = 0;
    char punct = '\0';
    switch (role) {
        case Role::key_1:
            offset = 0;  // the "{"
            punct = '{';
            break;
        case Role::key_2:
            offset = prompt.demo7_json.value_spans[0].end + 1;
            punct = ',';
            break;
        case Role::key_3:
            offset = prompt.demo7_json.value_spans[1].end + 1;
            punct = ',';
            break;
        case Role::value_1:
            offset = prompt.demo7_json.key_spans[0].end + 1;
            punct = ':';
            break;
        case Role::value_2:
            offset = prompt.demo7_json.key_spans[1].end + 1;
            punct = ':';
            break;
        case Role::value_3:
            offset = prompt.demo7_json.key_spans[2].end + 1;
            punct = ':';
            break;
    }
    const size_t target_char = prompt.demo7_text_begin + offset;
    const auto& offsets = prompt.fewshot.offsets;
    for (size_t t = prompt.demo7_output_span.begin; t < prompt.demo7_output_span.end; ++t) {
        if (offsets[t].first <= target_char && target_char < offsets[t].second) {
            if (prompt.fewshot.tokens.texts[t].find(punct) == std::string::npos)
                throw template_error(std::string("token at role ") + role_name(role) +
                                     " does not carry '" + punct + "': \"" +
                                     prompt.fewshot.tokens.texts[t] + "\"");
            return t;
        }
    }
    throw template_error(std::string("no token covers the ") + role_name(role) +
                         " punctuation inside demo 7's output span");
}

}  // namespace taskvec::compositional
