#pragma once

#include <cstdint>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/dataset/types.hpp"
#include "taskvec/engine/template.hpp"
#include "taskvec/experiments/results.hpp"

namespace taskvec::experiments {

struct SweepOptions {
    std::vector<int> layers;        // empty means every backend layer
    size_t episodes_per_task = 10;
    size_t k_shots = 7;
    std::uint64_t seed = 0;
    engine::PromptTemplate prompt_template;
    backend::GenerationParams generation;
    double failure_threshold = 0.1;
};

struct SweepResult {
    std::vector<EpisodeResult> rows;
    SweepSummary summary;
};

// For every task and episode: render the few-shot prompt, capture the
// separator state once, then score the zero-shot baseline, the few-shot
// baseline, and a task-vector injection per requested layer. Per-row failures
// are recorded and excluded from means; the summary flags a failure rate
// above the threshold. Deterministic given (task set, seed, layers).
SweepResult run_layer_sweep(const dataset::TaskSet& set, const backend::Backend& b,
                            judge::Judge& judge, const SweepOptions& options);

// Single-layer convenience: identical to the slice of a full sweep at that
// layer. Throws spec_error when the layer is outside the backend's range.
SweepResult fix_layer_and_run(const dataset::TaskSet& set, const backend::Backend& b,
                              judge::Judge& judge, int layer, SweepOptions options);

}  // namespace taskvec::experiments
