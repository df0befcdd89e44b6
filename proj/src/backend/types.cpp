#include "taskvec/backend/types.hpp"

#include <algorithm>

#include "taskvec/common/errors.hpp"

namespace taskvec::backend {

Vec HiddenCapture::state(int layer, size_t position) const {
    if (layer < 0 || layer >= num_layers())
        throw spec_error("capture has no layer " + std::to_string(layer));
    if (position >= positions())
        throw spec_error("capture has no position " + std::to_string(position));
    return layers_[static_cast<size_t>(layer)].col(static_cast<long>(position));
}

void HiddenCapture::set_state(int layer, size_t position, const Vec& v) {
    if (layer < 0 || layer >= num_layers())
        throw spec_error("capture has no layer " + std::to_string(layer));
    if (position >= positions())
        throw spec_error("capture has no position " + std::to_string(position));
    layers_[static_cast<size_t>(layer)].col(static_cast<long>(position)) = v;
}

std::string output_text(const GenerationResult& result, const GenerationParams& params) {
    std::string out;
    for (const auto& t : result.tokens.texts) out += t;
    if (result.stop_reason == StopReason::stop_token && !result.tokens.texts.empty()) {
        const std::string& last = result.tokens.texts.back();
        if (std::find(params.stop_texts.begin(), params.stop_texts.end(), last) !=
            params.stop_texts.end())
            out.erase(out.size() - last.size());
    }
    return out;
}

std::pair<TokenSeq, std::vector<std::pair<size_t, size_t>>> Backend::tokenize_with_offsets(
    const std::string& text) const {
    TokenSeq toks = tokenize(text);
    std::vector<std::pair<size_t, size_t>> offsets;
    offsets.reserve(toks.size());
    size_t pos = 0;
    for (size_t i = 0; i < toks.size(); ++i) {
        const std::string& surface = toks.texts[i];
        if (text.compare(pos, surface.size(), surface) != 0)
            throw template_error("token surface '" + surface +
                                 "' does not reproduce the source text at byte " +
                                 std::to_string(pos));
        offsets.emplace_back(pos, pos + surface.size());
        pos += surface.size();
    }
    if (pos != text.size())
        throw template_error("token surfaces cover " + std::to_string(pos) + " of " +
                             std::to_string(text.size()) + " source bytes");
    return {std::move(toks), std::move(offsets)};
}

}  // namespace taskvec::backend
