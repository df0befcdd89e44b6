#include "taskvec/engine/template.hpp"

#include <cctype>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::engine {

namespace {

std::string substitute(const std::string& format, const std::string& input,
                       const std::string& output) {
    std::string out = replace_all(format, "{input}", input);
    return replace_all(std::move(out), "{output}", output);
}

std::vector<std::pair<size_t, size_t>> find_occurrences(const std::string& text,
                                                        const std::string& needle) {
    std::vector<std::pair<size_t, size_t>> out;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        out.emplace_back(pos, pos + needle.size());
        pos += needle.size();
    }
    return out;
}

RenderedPrompt finish_render(const backend::Backend& b, std::string text,
                             const PromptTemplate& tmpl, size_t expected_separators) {
    if (tmpl.separator.empty()) throw template_error("template separator must be non-empty");

    auto occurrences = find_occurrences(text, tmpl.separator);
    if (occurrences.size() != expected_separators)
        throw template_error("rendered prompt holds " + std::to_string(occurrences.size()) +
                             " separator occurrences, expected " +
                             std::to_string(expected_separators) +
                             " (a demo field probably contains the separator)");

    RenderedPrompt out;
    out.text = std::move(text);
    auto [tokens, offsets] = b.tokenize_with_offsets(out.text);
    out.tokens = std::move(tokens);
    out.offsets = std::move(offsets);

    // Every occurrence must tokenize the same way, or the separator position
    // would not mean the same thing across demos.
    std::vector<int> reference_ids;
    std::pair<size_t, size_t> final_span{0, 0};
    for (size_t i = 0; i < occurrences.size(); ++i) {
        auto span = locate_token_span(out.text, out.offsets, occurrences[i].first,
                                      occurrences[i].second);
        std::vector<int> ids(out.tokens.ids.begin() + static_cast<long>(span.first),
                             out.tokens.ids.begin() + static_cast<long>(span.second));
        if (i == 0) {
            reference_ids = ids;
        } else if (ids != reference_ids) {
            throw template_error("separator tokenizes inconsistently across occurrences");
        }
        if (i + 1 == occurrences.size()) final_span = span;
    }
    out.separator_span = final_span;
    out.separator_position = final_span.second - 1;
    return out;
}

}  // namespace

std::pair<size_t, size_t> locate_token_span(const std::string& text,
                                            const std::vector<std::pair<size_t, size_t>>& offsets,
                                            size_t begin, size_t end) {
    size_t first = offsets.size();
    size_t last = 0;
    for (size_t i = 0; i < offsets.size(); ++i) {
        const auto& [s, e] = offsets[i];
        if (e <= begin || s >= end) continue;  // no overlap
        if (i < first) first = i;
        last = i;
    }
    if (first > last || first == offsets.size())
        throw template_error("no tokens cover bytes " + std::to_string(begin) + ".." +
                             std::to_string(end));
    if (offsets[last].second != end)
        throw template_error("span end merges into following text at byte " +
                             std::to_string(end));
    for (size_t i = offsets[first].first; i < begin; ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw template_error("span start merges into preceding non-whitespace text at byte " +
                                 std::to_string(begin));
    }
    return {first, last + 1};
}

RenderedPrompt render_fewshot(const backend::Backend& b,
                              const std::vector<dataset::ExamplePair>& shots,
                              const std::string& query, const PromptTemplate& tmpl) {
    if (trim(query).empty()) throw spec_error("query must be non-empty");
    for (const auto& s : shots) {
        if (trim(s.input).empty() || trim(s.output).empty())
            throw spec_error("demo pairs must have non-empty input and output");
    }
    std::string text;
    for (const auto& s : shots) {
        text += substitute(tmpl.pair_format, s.input, s.output);
        text += tmpl.pair_joiner;
    }
    text += substitute(tmpl.query_format, query, "");
    return finish_render(b, std::move(text), tmpl, shots.size() + 1);
}

RenderedPrompt render_zeroshot(const backend::Backend& b, const std::string& query,
                               const PromptTemplate& tmpl) {
    if (trim(query).empty()) throw spec_error("query must be non-empty");
    return finish_render(b, substitute(tmpl.query_format, query, ""), tmpl, 1);
}

}  // namespace taskvec::engine
