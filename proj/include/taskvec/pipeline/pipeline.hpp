#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taskvec/dataset/types.hpp"
#include "taskvec/pipeline/client.hpp"
#include "taskvec/pipeline/types.hpp"

namespace taskvec::pipeline {

struct PipelineOptions {
    size_t num_examples = 30;   // asked of the generator, in [30, 50]
    size_t keep_pairs = 30;     // first N valid unique pairs kept per record
    size_t chunk_size = 20;     // entries per classification call
    size_t workers = 1;         // generation worker threads
    RetryPolicy retry;          // applies per call; parse failures consume attempts too
};

struct ReportEvent {
    std::string kind;         // "chunk-failed", "unclassified", "input-free", "generation-failed",
                              // "validation-dropped", "duplicate-instruction", "row-violation"
    std::string instruction;  // may be empty for chunk-level events
    std::string detail;
};

struct PipelineReport {
    size_t total_entries = 0;
    size_t good = 0;
    size_t limited = 0;
    size_t invalid = 0;
    size_t unclassified = 0;
    size_t skipped_input_free = 0;
    size_t generation_attempted = 0;
    size_t records_kept = 0;
    size_t records_dropped = 0;
    std::vector<ReportEvent> events;
};

struct PipelineResult {
    dataset::TaskSet taskset;
    PipelineReport report;
};

// Classification phase alone (the `dataset filter` command). Rows come back
// in entry order; entries no reply row matched are counted and reported.
struct ClassificationOutput {
    std::vector<ClassificationRow> rows;
    std::vector<ReportEvent> events;
    size_t good = 0;
    size_t limited = 0;
    size_t invalid = 0;
    size_t unclassified = 0;
};

ClassificationOutput classify_entries(const std::vector<SourceEntry>& entries,
                                      GeneratorClient& client,
                                      const PipelineOptions& options = {});

// Classify entries in chunks, then generate pairs for every GOOD entry with a
// non-empty example input, validate at dataset grade, and assemble the task
// set. Failed records are dropped and reported, never silently retried into
// the output. With more than one worker, generation calls run concurrently but
// results merge in entry order, so replay runs are byte-deterministic.
PipelineResult run_pipeline(const std::vector<SourceEntry>& entries, GeneratorClient& client,
                            const PipelineOptions& options = {});

// Line-delimited report: one summary object, then one line per event.
std::string serialize_report(const PipelineReport& report);

// Entries from an instruction-tuning JSON file: either a JSON array or JSONL
// of objects with keys instruction / input / output (example_input and
// example_output are accepted as aliases).
std::vector<SourceEntry> load_source_entries(const std::string& path);

}  // namespace taskvec::pipeline
