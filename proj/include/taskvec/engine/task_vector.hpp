#pragma once

#include <string>

#include "taskvec/backend/types.hpp"
#include "taskvec/engine/template.hpp"

namespace taskvec::engine {

// A task vector: the residual-stream state at the separator token of a
// few-shot prompt, at one layer, plus enough provenance to audit where it
// came from.
struct TaskVector {
    int layer = 0;
    backend::Vec vector;
    size_t source_position = 0;            // token index the state was read at
    std::string source_prompt_hash;        // content hash of the source prompt text
    std::pair<size_t, size_t> separator_token_span = {0, 0};
};

// Read the state at (layer, separator position) out of a capture of the
// rendered few-shot prompt. The capture must come from that prompt's tokens.
TaskVector extract_task_vector(const backend::HiddenCapture& capture,
                               const RenderedPrompt& fewshot, int layer);

// Run the zero-shot prompt with the task vector written over the state at
// (layer, separator position), then decode greedily.
backend::GenerationResult inject_and_generate(const backend::Backend& b,
                                              const RenderedPrompt& zeroshot,
                                              const TaskVector& tv,
                                              const backend::GenerationParams& params);

// Full-precision round trip: doubles survive save/load bit for bit.
void save_task_vector(const TaskVector& tv, const std::string& path);
TaskVector load_task_vector(const std::string& path);

}  // namespace taskvec::engine
