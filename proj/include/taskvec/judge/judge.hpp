#pragma once

#include <functional>
#include <string>

#include "taskvec/pipeline/client.hpp"

namespace taskvec::judge {

struct ScorePair {
    int format = 0;       // 0..10
    int correctness = 0;  // 0..10
};

struct JudgeRequest {
    std::string instruction;
    std::string sample_input;
    std::string expected_output;
    std::string submission;
};

// The two-part scoring prompt sent to a judge model.
pipeline::CompletionRequest build_judge_prompts(const JudgeRequest& request);

// Accepts exactly two integers 0..10 separated by a comma, with optional
// whitespace around each integer; anything else (signs, leading zeros,
// trailing prose, out-of-range values) throws parse_error.
ScorePair parse_scores(const std::string& reply);

struct JudgePolicy {
    // Total attempts per request; an unparseable reply consumes one.
    int max_attempts = 2;
};

// Scores one submission. Every raw reply is forwarded to `transcript` when
// set; when all attempts fail to parse, throws judging_error carrying them.
ScorePair judge_output(const JudgeRequest& request, pipeline::GeneratorClient& client,
                       const JudgePolicy& policy = {},
                       const std::function<void(const std::string&)>& transcript = nullptr);

// Deterministic rule-based stand-in for CI: compares normalized texts (trim,
// collapse internal whitespace, casefold).
//   exact match                        -> (10, 10)
//   submission echoes the input        -> (format per type match, 0)
//   single label where one is expected -> (10, 0)
//   anything else                      -> (0, 0)
ScorePair oracle_judge(const JudgeRequest& request);

// The normalization oracle_judge applies, exposed for tests.
std::string normalize_answer(const std::string& text);

// Scoring backend the experiment runners call through.
class Judge {
public:
    virtual ~Judge() = default;
    virtual ScorePair score(const JudgeRequest& request) = 0;
    virtual std::string kind() const = 0;
};

class OracleJudge : public Judge {
public:
    ScorePair score(const JudgeRequest& request) override { return oracle_judge(request); }
    std::string kind() const override { return "oracle"; }
};

class LlmJudge : public Judge {
public:
    LlmJudge(pipeline::GeneratorClient& client, JudgePolicy policy = {},
             std::function<void(const std::string&)> transcript = nullptr)
        : client_(client), policy_(policy), transcript_(std::move(transcript)) {}

    ScorePair score(const JudgeRequest& request) override {
        return judge_output(request, client_, policy_, transcript_);
    }
    std::string kind() const override { return "llm"; }

private:
    pipeline::GeneratorClient& client_;
    JudgePolicy policy_;
    std::function<void(const std::string&)> transcript_;
};

}  // namespace taskvec::judge
