#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace taskvec::backend {

using Vec = Eigen::VectorXd;

struct TokenSeq {
    std::vector<int> ids;
    std::vector<std::string> texts;

    size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }
    void push_back(int id, std::string text) {
        ids.push_back(id);
        texts.push_back(std::move(text));
    }
};

// Replace the residual-stream state at (layer, position) with `vector` before
// any later layer or later position consumes it.
struct InterventionSpec {
    int layer = 0;
    size_t position = 0;
    Vec vector;
};

// Post-block hidden states for one forward pass: per layer a width x positions
// matrix. When the pass ran with interventions, the capture still reports what
// each block naturally computed; the replacement is what downstream consumers
// saw. So captured states at the intervened coordinate itself are the
// pre-replacement values.
class HiddenCapture {
public:
    HiddenCapture() = default;
    HiddenCapture(int num_layers, int width, size_t positions)
        : layers_(static_cast<size_t>(num_layers), Eigen::MatrixXd::Zero(width, static_cast<long>(positions))) {}

    int num_layers() const { return static_cast<int>(layers_.size()); }
    int width() const { return layers_.empty() ? 0 : static_cast<int>(layers_[0].rows()); }
    size_t positions() const {
        return layers_.empty() ? 0 : static_cast<size_t>(layers_[0].cols());
    }

    Vec state(int layer, size_t position) const;
    void set_state(int layer, size_t position, const Vec& v);
    Eigen::MatrixXd& layer(int l) { return layers_.at(static_cast<size_t>(l)); }
    const Eigen::MatrixXd& layer(int l) const { return layers_.at(static_cast<size_t>(l)); }

private:
    std::vector<Eigen::MatrixXd> layers_;
};

struct GenerationParams {
    size_t max_tokens = 128;
    // Generation stops after producing a token whose surface matches one of
    // these exactly (the stop token is kept in the output).
    std::vector<std::string> stop_texts = {"\n"};
};

enum class StopReason { stop_token, max_tokens };

struct GenerationResult {
    TokenSeq tokens;                 // generated tokens only, stop token included
    std::vector<Vec> distributions;  // next-token distribution per step
    StopReason stop_reason = StopReason::max_tokens;
};

// Generated text with the trailing stop token stripped.
std::string output_text(const GenerationResult& result, const GenerationParams& params);

// A causal LM with residual-stream read/write access. Implementations must be
// deterministic: same tokens and interventions, same states and outputs,
// bit for bit. Decoding is greedy.
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string id() const = 0;
    virtual int num_layers() const = 0;
    virtual int hidden_width() const = 0;
    virtual size_t context_limit() const = 0;

    virtual TokenSeq tokenize(const std::string& text) const = 0;
    virtual std::string detokenize(const TokenSeq& tokens) const = 0;

    // Tokens plus their source character ranges [begin, end). The default
    // walks the surfaces and requires them to reproduce the text exactly.
    virtual std::pair<TokenSeq, std::vector<std::pair<size_t, size_t>>> tokenize_with_offsets(
        const std::string& text) const;

    virtual HiddenCapture forward_capture(const TokenSeq& tokens,
                                          const std::vector<InterventionSpec>& interventions = {}) const = 0;

    // Greedy decode. Interventions are re-applied on every step's forward pass
    // whenever their position exists in the current sequence.
    virtual GenerationResult generate(const TokenSeq& prompt,
                                      const std::vector<InterventionSpec>& interventions,
                                      const GenerationParams& params) const = 0;
};

}  // namespace taskvec::backend
