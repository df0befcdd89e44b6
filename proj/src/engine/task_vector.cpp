#include "taskvec/engine/task_vector.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"

namespace taskvec::engine {

TaskVector extract_task_vector(const backend::HiddenCapture& capture,
                               const RenderedPrompt& fewshot, int layer) {
    if (layer < 0 || layer >= capture.num_layers())
        throw spec_error("layer " + std::to_string(layer) + " outside the captured 0.." +
                         std::to_string(capture.num_layers() - 1));
    if (capture.positions() != fewshot.tokens.size())
        throw spec_error("capture covers " + std::to_string(capture.positions()) +
                         " positions but the prompt has " +
                         std::to_string(fewshot.tokens.size()) + " tokens");
    TaskVector tv;
    tv.layer = layer;
    tv.vector = capture.state(layer, fewshot.separator_position);
    tv.source_position = fewshot.separator_position;
    tv.source_prompt_hash = content_hash(fewshot.text);
    tv.separator_token_span = fewshot.separator_span;
    return tv;
}

backend::GenerationResult inject_and_generate(const backend::Backend& b,
                                              const RenderedPrompt& zeroshot,
                                              const TaskVector& tv,
                                              const backend::GenerationParams& params) {
    if (tv.vector.size() != b.hidden_width())
        throw spec_error("task vector width " + std::to_string(tv.vector.size()) +
                         " does not match backend width " + std::to_string(b.hidden_width()));
    backend::InterventionSpec spec;
    spec.layer = tv.layer;
    spec.position = zeroshot.separator_position;
    spec.vector = tv.vector;
    return b.generate(zeroshot.tokens, {spec}, params);
}

void save_task_vector(const TaskVector& tv, const std::string& path) {
    nlohmann::ordered_json j;
    j["layer"] = tv.layer;
    j["source_position"] = tv.source_position;
    j["source_prompt_hash"] = tv.source_prompt_hash;
    j["separator_token_span"] = {tv.separator_token_span.first, tv.separator_token_span.second};
    auto values = nlohmann::ordered_json::array();
    for (long i = 0; i < tv.vector.size(); ++i) values.push_back(tv.vector[i]);
    j["values"] = std::move(values);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open '" + path + "' for writing");
    f << j.dump(2) << "\n";
}

TaskVector load_task_vector(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("cannot open task vector '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    TaskVector tv;
    try {
        nlohmann::json j = nlohmann::json::parse(buf.str());
        tv.layer = j.at("layer").get<int>();
        tv.source_position = j.at("source_position").get<size_t>();
        tv.source_prompt_hash = j.at("source_prompt_hash").get<std::string>();
        tv.separator_token_span = {j.at("separator_token_span").at(0).get<size_t>(),
                                   j.at("separator_token_span").at(1).get<size_t>()};
        const auto& values = j.at("values");
        tv.vector.resize(static_cast<long>(values.size()));
        for (size_t i = 0; i < values.size(); ++i)
            tv.vector[static_cast<long>(i)] = values[i].get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("bad task vector file '" + path + "': " + e.what());
    }
    return tv;
}

}  // namespace taskvec::engine
