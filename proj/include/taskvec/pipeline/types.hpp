#pragma once

#include <optional>
#include <string>
#include <vector>

namespace taskvec::pipeline {

// One raw instruction-tuning entry before filtering. `example_input` may be
// empty for input-free entries; those can be classified but never feed pair
// generation.
struct SourceEntry {
    std::string instruction;
    std::string example_input;
    std::string example_output;
};

enum class Verdict { good, limited, invalid };

std::string to_string(Verdict v);

struct ClassificationRow {
    std::string instruction;
    std::string example_input;
    Verdict verdict = Verdict::invalid;
    std::string explanation;
};

struct ClassificationResult {
    std::vector<ClassificationRow> rows;
    // Rows that could not be used, with the reason (bad label, wrong arity,
    // missing explanation). Violations are reported, not thrown.
    std::vector<std::string> violations;
};

}  // namespace taskvec::pipeline
