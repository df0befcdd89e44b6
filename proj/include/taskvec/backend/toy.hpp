#pragma once

#include <string>

#include "taskvec/backend/types.hpp"
#include "taskvec/dataset/types.hpp"

namespace taskvec::backend {

struct ToyConfig {
    size_t context_limit = 512;
};

// A deterministic miniature causal model with closed-form hidden states.
//
// Five blocks over a 61-token vocabulary and a 200-wide residual stream:
//   block 0  token identity and structural flags
//   block 1  demo-pair recognition (which task would explain this pair)
//   block 2  task belief at separators plus a per-position "what to emit
//            next" directive, resolved from in-context evidence
//   block 3  directive execution: plans the next token, reading query and
//            description content from layer-2 states at earlier positions
//   block 4  carry-through to the readout
// The readout turns the planned-token channel at the last position into an
// exact one-hot next-token distribution, so greedy decoding is unambiguous
// and every probability is 0 or 1.
//
// Block 2 is where in-context task information becomes causally load-bearing,
// which makes it the designated encoding layer: states exported from there
// transfer a task, states from other depths do not.
class ToyBackend : public Backend {
public:
    explicit ToyBackend(ToyConfig config = {});

    std::string id() const override;
    int num_layers() const override;
    int hidden_width() const override;
    size_t context_limit() const override;

    TokenSeq tokenize(const std::string& text) const override;
    std::string detokenize(const TokenSeq& tokens) const override;
    std::pair<TokenSeq, std::vector<std::pair<size_t, size_t>>> tokenize_with_offsets(
        const std::string& text) const override;

    HiddenCapture forward_capture(const TokenSeq& tokens,
                                  const std::vector<InterventionSpec>& interventions = {}) const override;

    GenerationResult generate(const TokenSeq& prompt,
                              const std::vector<InterventionSpec>& interventions,
                              const GenerationParams& params) const override;

private:
    ToyConfig config_;
};

// The four letter tasks as an episode-grade task set: ten pairs each (one per
// alphabet letter), categories derived from the instruction texts.
dataset::TaskSet toy_letter_taskset();

}  // namespace taskvec::backend
