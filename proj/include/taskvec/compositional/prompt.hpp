#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/compositional/records.hpp"
#include "taskvec/engine/template.hpp"

namespace taskvec::compositional {

// Token index range [begin, end) into some tokenization.
struct TokenSpan {
    size_t begin = 0;
    size_t end = 0;
};

// The six structural positions of the three-key JSON object. Key roles are
// the attribute-name tokens, value roles are the first token of each value.
enum class Role { key_1, key_2, key_3, value_1, value_2, value_3 };

inline constexpr std::array<Role, 6> kAllRoles = {Role::key_1,   Role::key_2,   Role::key_3,
                                                  Role::value_1, Role::value_2, Role::value_3};

const char* role_name(Role role);

// The test record's JSON resolved against a concrete tokenizer: standalone
// tokenization of the target text plus token spans per key name and value.
struct TargetTokens {
    backend::TokenSeq tokens;
    std::array<TokenSpan, 3> key_token_spans;
    std::array<TokenSpan, 3> value_token_spans;

    // Generation step (= token index into `tokens`) whose target token the
    // role scores: the key token, or the first value token.
    size_t role_step(Role role) const;
};

TargetTokens resolve_target(const backend::Backend& b, const JsonTarget& target);

// Everything the grid and strategy evaluations need for one (few-shot, test)
// pair: the 7-demo prompt, the bare zero-shot prompt, where demo 7's JSON
// lives in the few-shot tokenization, and the ground-truth target.
struct CompositionalPrompt {
    engine::RenderedPrompt fewshot;
    engine::RenderedPrompt zeroshot;
    TokenSpan demo7_output_span;  // token range in fewshot.tokens
    size_t demo7_text_begin = 0;  // byte offset of demo 7's JSON in fewshot.text
    JsonTarget demo7_json;
    JsonTarget target;       // test record's true JSON
    TargetTokens reference;  // target resolved against the backend
};

// Renders 7 description->JSON demos plus the test description up to the
// separator. Throws spec_error unless given exactly 8 pairwise distinct
// records; template_error when demo 7's output span cannot be located.
CompositionalPrompt build_compositional_prompt(const backend::Backend& b,
                                               const std::vector<CarRecord>& records,
                                               const engine::PromptTemplate& tmpl,
                                               DescriptionStyle style);

// Fixed alignment rule: key_1 -> the token covering demo 7's "{", key_2 and
// key_3 -> the first and second "," tokens, value_i -> the i-th ":" token.
// Throws template_error when the covering token does not carry the expected
// punctuation.
size_t align_subtask_source(const CompositionalPrompt& prompt, Role role);

}  // namespace taskvec::compositional
