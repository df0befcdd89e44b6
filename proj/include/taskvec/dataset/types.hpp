#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taskvec::dataset {

struct ExamplePair {
    std::string input;
    std::string output;
};

enum class Source { alpaca_derived, synthetic, fixture };

std::string to_string(Source s);
Source source_from_string(const std::string& s);

struct TaskRecord {
    std::string task_id;      // content hash of the instruction
    std::string instruction;
    std::string category;     // always derive_category(instruction)
    Source source = Source::fixture;
    std::string generator;    // free-text label of the generating client, may be empty
    std::vector<ExamplePair> pairs;
};

struct TaskSet {
    std::string version = "1";
    std::vector<TaskRecord> tasks;
    std::map<std::string, size_t> manifest;  // category -> count
};

// Pair-count requirements differ by intended use: a record that feeds the
// generation corpus needs 30 pairs, one that only has to fill 7+1 episodes
// needs 8.
enum class Grade { dataset, episode };

struct Violation {
    std::string code;     // e.g. "pair-count", "duplicate-input"
    std::string message;
    std::optional<size_t> pair_index;
};

// First whitespace-delimited word of the instruction, lowercased, with
// leading/trailing punctuation (.,:;!?"') stripped; internal hyphens kept.
// Throws spec_error when no category can be derived.
std::string derive_category(const std::string& instruction);

// Stable content id for an instruction.
std::string make_task_id(const std::string& instruction);

// Validation is data, not failure: an invalid record is representable and
// reportable. Empty result means the record is valid at the given grade.
std::vector<Violation> validate_task(const TaskRecord& record, Grade grade);

// Category -> count with everything outside the top_n most frequent folded
// into "other". Ties on count break lexicographically by name. When there is
// no remainder, "other" is absent.
std::map<std::string, size_t> bucket_categories(const TaskSet& set, size_t top_n = 8);

// Recompute the manifest from the records.
std::map<std::string, size_t> tally_categories(const TaskSet& set);

}  // namespace taskvec::dataset
