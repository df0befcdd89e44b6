#include "taskvec/pipeline/prompts.hpp"

#include <sstream>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"
#include "taskvec/pipeline/pipe_csv.hpp"

namespace taskvec::pipeline {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::good: return "GOOD";
        case Verdict::limited: return "LIMITED";
        case Verdict::invalid: return "INVALID";
    }
    throw spec_error("unknown verdict value");
}

namespace {

const char* kClassificationPrompt =
    R"PROMPT(Your task is to classify each instruction based on how suitable it is for creating few-shot examples. An instruction is good for few-shots if you can generate many different input-output pairs (at least 30) where:
- The same instruction works for all pairs
- Each input is meaningfully different from others
- The output's correctness can be clearly evaluated

Output pure CSV starting with this header:
instruction|example_input|category|explanation

Categories:
GOOD = Good for few-shots: you can create many (30+) valid input examples
LIMITED = Bad for few-shots: cannot generate enough different examples (requires explanation)
INVALID = Invalid: impossible to complete with given input (requires explanation)

Technical rules:
- Start immediately with header
- Process **all** instructions exactly as written, in order
- No quotes in output
- Explain both LIMITED and INVALID cases)PROMPT";

const char* kGenerationPrompt =
    R"PROMPT(You are a specialized AI assistant tasked with generating diverse and meaningful examples based on given instructions. Your task is to generate {num_examples} different, high-quality input examples for a given instruction, along with corresponding outputs. Each example should be unique and demonstrate different aspects or applications of the instruction.

Here is the instruction and an example input-output pair for reference:

[INSTRUCTION]
{instruction}

Example format:
Input: {example_input}
Output: {example_output}

Your task is to:
1. Analyze the instruction and understand its scope
2. Generate {num_examples} different, realistic, and diverse inputs that could be used with this instruction
3. For each input, provide an appropriate output following the pattern shown in the example
4. Ensure each input-output pair is unique and demonstrates different aspects of the instruction
5. Format your response exactly as a CSV table with three columns with a header: counter|input|output

Requirements:
- Generate exactly {num_examples} examples
- Ensure all examples are distinct and non-repetitive
- Maintain consistent quality across all examples
- Follow the same style and format as the provided example
- Ensure inputs are realistic and contextually appropriate
- Make outputs match the format and style of the example output

Format your response exactly like this:
```
counter|input|output
1|[first input]|[corresponding output]
2|[second input]|[corresponding output]
...
{num_examples}|[{num_examples}th input]|[corresponding output]
```

Important notes:
- Do not include explanations or additional text
- Start directly with the CSV format
- Use | as separator
- Escape any special characters within the text using double quotes
- Maintain consistent formatting throughout
- Ensure each row follows the exact same pattern
- Do not skip numbers or leave gaps in the counter

Begin your response now by outputting exactly {num_examples} examples in the specified CSV format with | as a separator.)PROMPT";

const char* kClassificationHeader = "instruction|example_input|category|explanation";
const char* kGenerationHeader = "counter|input|output";

// Remove ``` fence lines (with or without a language tag) anywhere in the
// reply; generators wrap their CSV in fences often enough to tolerate it.
std::string strip_code_fences(const std::string& text) {
    std::ostringstream out;
    for (const auto& line : split_lines(text)) {
        if (trim(line).rfind("```", 0) == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

}  // namespace

std::string build_classification_prompt(const std::vector<SourceEntry>& entries) {
    std::ostringstream out;
    out << kClassificationPrompt << "\n\nInstructions to classify:\n";
    for (const auto& e : entries)
        out << e.instruction << "|" << e.example_input << "\n";
    return out.str();
}

std::string build_generation_prompt(const SourceEntry& entry, size_t num_examples) {
    if (num_examples < 30 || num_examples > 50)
        throw spec_error("num_examples must be in [30, 50], got " +
                         std::to_string(num_examples));
    std::string p = kGenerationPrompt;
    p = replace_all(std::move(p), "{num_examples}", std::to_string(num_examples));
    p = replace_all(std::move(p), "{instruction}", entry.instruction);
    p = replace_all(std::move(p), "{example_input}", entry.example_input);
    p = replace_all(std::move(p), "{example_output}", entry.example_output);
    return p;
}

ClassificationResult parse_classification_response(const std::string& text) {
    ClassificationResult result;
    bool header_seen = false;

    // The classification prompt forbids quotes in the output, so rows are
    // split on every pipe; an instruction containing a pipe shows up as a
    // wrong-arity violation rather than silently misparsing.
    for (const auto& line : split_lines(strip_code_fences(text))) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            if (t == kClassificationHeader) header_seen = true;
            continue;
        }
        auto fields = split_plain(t);
        if (fields.size() != 4) {
            result.violations.push_back("row '" + t.substr(0, 60) + "': expected 4 fields, got " +
                                        std::to_string(fields.size()));
            continue;
        }
        ClassificationRow row;
        row.instruction = trim(fields[0]);
        row.example_input = trim(fields[1]);
        row.explanation = trim(fields[3]);
        std::string label = trim(fields[2]);
        if (label == "GOOD") {
            row.verdict = Verdict::good;
        } else if (label == "LIMITED") {
            row.verdict = Verdict::limited;
        } else if (label == "INVALID") {
            row.verdict = Verdict::invalid;
        } else {
            result.violations.push_back("row '" + row.instruction.substr(0, 60) +
                                        "': unknown label '" + label + "'");
            continue;
        }
        if (row.verdict != Verdict::good && row.explanation.empty()) {
            result.violations.push_back("row '" + row.instruction.substr(0, 60) + "': " + label +
                                        " verdict lacks an explanation");
            continue;
        }
        result.rows.push_back(std::move(row));
    }

    if (!header_seen)
        throw parse_error("classification reply lacks the header row '" +
                          std::string(kClassificationHeader) + "'");
    if (result.rows.empty())
        throw parse_error("classification reply contained no parseable rows");
    return result;
}

std::vector<dataset::ExamplePair> parse_generation_response(const std::string& text,
                                                            size_t expected) {
    auto rows = parse_rows(strip_code_fences(text));
    if (!rows.empty() && rows.front().size() == 3 && trim(rows.front()[0]) == "counter" &&
        trim(rows.front()[1]) == "input" && trim(rows.front()[2]) == "output")
        rows.erase(rows.begin());
    if (rows.empty()) throw parse_error("generation reply contained no rows");

    std::vector<std::optional<dataset::ExamplePair>> slots(expected);
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 3)
            throw parse_error("generation row " + std::to_string(i + 1) + ": expected 3 fields, got " +
                              std::to_string(r.size()));
        size_t counter = 0;
        try {
            counter = static_cast<size_t>(std::stoul(trim(r[0])));
        } catch (const std::exception&) {
            throw parse_error("generation row " + std::to_string(i + 1) + ": bad counter '" +
                              trim(r[0]) + "'");
        }
        if (counter < 1 || counter > expected)
            throw parse_error("counter " + std::to_string(counter) + " outside 1.." +
                              std::to_string(expected));
        if (slots[counter - 1].has_value())
            throw parse_error("counter " + std::to_string(counter) + " appears twice");
        slots[counter - 1] = dataset::ExamplePair{r[1], r[2]};
    }
    for (size_t c = 0; c < expected; ++c) {
        if (!slots[c].has_value())
            throw parse_error("counter " + std::to_string(c + 1) + " is missing");
    }

    std::vector<dataset::ExamplePair> out;
    out.reserve(expected);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace taskvec::pipeline
