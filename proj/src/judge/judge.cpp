#include "taskvec/judge/judge.hpp"

#include <cctype>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::judge {

namespace {

const char* kSystemPrompt =
    R"PROMPT(You are a judge evaluating responses to tasks. You must provide exactly two scores:

1. Format score (0-10): How well the response matches the semantic type required by the task
- Score 10: Response provides exactly the type of answer requested (e.g., classification label for classification tasks, Yes/No for yes/no questions)
- Score 7-9: Provides the right type of answer with minor formatting issues
- Score 4-6: Partially attempts to provide the required type (e.g., some classifications missing in classification task)
- Score 1-3: Attempts to answer but mostly missing required type markers
.

2. Correctness score (0-10): How accurate/correct the actual answer is within its task domain
- Score 10: Completely correct task completion
- Score 7-9: Mostly correct task completion with minor issues
- Score 4-6: Partial task completion with significant issues
- Score 1-3: Minimal correct task completion
- Score 0: No actual task completion (e.g., just repeating input, missing classifications)

Important: Simply repeating input or providing incomplete answers does not count as task completion. The response must actually perform the requested operation (classify, summarize, etc.) to receive any correctness points.

For classification tasks, any classification label gets a high format score even if wrong (e.g., answering "Opinion" for a fact still gets a high format score). For Yes/No tasks, any Yes/No answer gets a high format score regardless of correctness.

You must output your scores in exactly this format (without quotation marks):
FORMAT_SCORE,CORRECTNESS_SCORE

For example, the output might be:
8,3

Do not provide any explanations or additional text. Only output two numbers separated by a comma.)PROMPT";

const char* kUserPrompt =
    R"PROMPT(You are a judge evaluating responses to tasks. You must provide exactly two scores:
1. Instruction: """{instruction}"""
2. Sample Input: """{example_input}"""
3. Expected Output: """{example_output}"""
4. Submission to evaluate: """{output_to_evaluate}""")PROMPT";

}  // namespace

pipeline::CompletionRequest build_judge_prompts(const JudgeRequest& request) {
    std::string user = kUserPrompt;
    user = replace_all(std::move(user), "{instruction}", request.instruction);
    user = replace_all(std::move(user), "{example_input}", request.sample_input);
    user = replace_all(std::move(user), "{example_output}", request.expected_output);
    user = replace_all(std::move(user), "{output_to_evaluate}", request.submission);
    return {kSystemPrompt, std::move(user)};
}

ScorePair parse_scores(const std::string& reply) {
    size_t i = 0;
    const size_t n = reply.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(reply[i]))) ++i;
    };
    // "10" or a single digit; "08" and "007" are not score numerals.
    auto read_score = [&]() -> int {
        size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(reply[i]))) ++i;
        size_t len = i - start;
        if (len == 1) return reply[start] - '0';
        if (len == 2 && reply[start] == '1' && reply[start + 1] == '0') return 10;
        throw parse_error("not a score in 0..10 at offset " + std::to_string(start) + " of '" +
                          reply.substr(0, 40) + "'");
    };

    skip_ws();
    int format = read_score();
    skip_ws();
    if (i >= n || reply[i] != ',')
        throw parse_error("expected ',' between scores in '" + reply.substr(0, 40) + "'");
    ++i;
    skip_ws();
    int correctness = read_score();
    skip_ws();
    if (i != n)
        throw parse_error("trailing text after scores in '" + reply.substr(0, 40) + "'");
    return {format, correctness};
}

ScorePair judge_output(const JudgeRequest& request, pipeline::GeneratorClient& client,
                       const JudgePolicy& policy,
                       const std::function<void(const std::string&)>& transcript) {
    pipeline::CompletionRequest prompts = build_judge_prompts(request);
    int attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
    std::vector<std::string> raw;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::string reply = client.complete(prompts);
        if (transcript) transcript(reply);
        raw.push_back(reply);
        try {
            return parse_scores(reply);
        } catch (const parse_error&) {
            // next attempt, same request
        }
    }
    throw judging_error("judge reply stayed unparseable over " + std::to_string(attempts) +
                            " attempts",
                        std::move(raw));
}

std::string normalize_answer(const std::string& text) {
    return to_lower(collapse_whitespace(text));
}

namespace {

bool is_single_label(const std::string& normalized) {
    return !normalized.empty() && normalized.find(' ') == std::string::npos;
}

}  // namespace

ScorePair oracle_judge(const JudgeRequest& request) {
    std::string expected = normalize_answer(request.expected_output);
    std::string submitted = normalize_answer(request.submission);

    if (!expected.empty() && submitted == expected) return {10, 10};

    bool type_match = is_single_label(expected) && is_single_label(submitted);
    if (!submitted.empty() && submitted == normalize_answer(request.sample_input))
        return {type_match ? 10 : 0, 0};
    if (type_match) return {10, 0};
    return {0, 0};
}

}  // namespace taskvec::judge
