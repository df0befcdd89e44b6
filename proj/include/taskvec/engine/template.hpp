#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/dataset/types.hpp"

namespace taskvec::engine {

struct PromptTemplate {
    std::string pair_format = "{input} -> {output}";
    std::string pair_joiner = "\n";
    std::string query_format = "{input} ->";
    std::string separator = "->";
};

struct RenderedPrompt {
    std::string text;
    backend::TokenSeq tokens;
    std::vector<std::pair<size_t, size_t>> offsets;  // byte range per token
    // Index of the final token of the final separator occurrence: where the
    // task-encoding state lives.
    size_t separator_position = 0;
    // Token range [first, last) covering that final occurrence.
    std::pair<size_t, size_t> separator_span = {0, 0};
};

// Tokens covering the byte range [begin, end): the last covering token must
// end exactly at `end`, and the first may start earlier only across
// whitespace (a template joiner space the tokenizer absorbed). Anything else
// throws template_error.
std::pair<size_t, size_t> locate_token_span(const std::string& text,
                                            const std::vector<std::pair<size_t, size_t>>& offsets,
                                            size_t begin, size_t end);

// k demo pairs then the query, all joined with pair_joiner. Validates that
// the rendered text holds exactly k+1 separator occurrences and that every
// occurrence tokenizes to the same token id sequence; violations throw
// template_error. An empty (after trim) query or demo field throws spec_error.
RenderedPrompt render_fewshot(const backend::Backend& b,
                              const std::vector<dataset::ExamplePair>& shots,
                              const std::string& query, const PromptTemplate& tmpl = {});

// The bare query line, no demos: exactly one separator occurrence.
RenderedPrompt render_zeroshot(const backend::Backend& b, const std::string& query,
                               const PromptTemplate& tmpl = {});

}  // namespace taskvec::engine
