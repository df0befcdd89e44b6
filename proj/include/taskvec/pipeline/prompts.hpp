#pragma once

#include <string>
#include <vector>

#include "taskvec/dataset/types.hpp"
#include "taskvec/pipeline/types.hpp"

namespace taskvec::pipeline {

// The full classification prompt: fixed instruction block followed by the
// entries to classify, one "instruction|example_input" row per line, in order.
std::string build_classification_prompt(const std::vector<SourceEntry>& entries);

// The pair-generation prompt for one entry. `num_examples` must lie in
// [30, 50]; out of range throws spec_error.
std::string build_generation_prompt(const SourceEntry& entry, size_t num_examples);

// Parse the classifier's reply. Tolerates a fenced code block around the CSV.
// Throws parse_error when the header row is missing or no row parses at all;
// per-row problems are reported in the result instead.
ClassificationResult parse_classification_response(const std::string& text);

// Parse a generation reply into pairs, returned in counter order. Counters
// must be exactly 1..expected: a gap, duplicate, or non-numeric counter throws
// parse_error naming the counter; a row with the wrong arity names the row.
// Tolerates a fenced code block and an optional leading header row.
std::vector<dataset::ExamplePair> parse_generation_response(const std::string& text,
                                                            size_t expected);

}  // namespace taskvec::pipeline
