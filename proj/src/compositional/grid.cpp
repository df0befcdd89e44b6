#include "taskvec/compositional/grid.hpp"

#include <algorithm>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/report/csv.hpp"

namespace taskvec::compositional {

namespace {

backend::TokenSeq with_prefix(const backend::TokenSeq& base, const backend::TokenSeq& gen,
                              size_t n) {
    backend::TokenSeq out = base;
    for (size_t i = 0; i < n; ++i) out.push_back(gen.ids[i], gen.texts[i]);
    return out;
}

}  // namespace

InfluenceGrid influence_grid(const backend::Backend& b, const CompositionalPrompt& prompt,
                             int layer) {
    if (layer < 0 || layer >= b.num_layers())
        throw spec_error("layer " + std::to_string(layer) + " out of range for backend with " +
                         std::to_string(b.num_layers()) + " layers");

    backend::HiddenCapture capture = b.forward_capture(prompt.fewshot.tokens);

    backend::GenerationParams params;
    params.max_tokens = prompt.reference.tokens.size() + 8;
    backend::GenerationResult natural = b.generate(prompt.zeroshot.tokens, {}, params);
    backend::TokenSeq rows_tokens = natural.tokens;
    if (natural.stop_reason == backend::StopReason::stop_token && !rows_tokens.empty()) {
        rows_tokens.ids.pop_back();
        rows_tokens.texts.pop_back();
    }

    const auto& ref = prompt.reference.tokens;
    const size_t n_rows = std::min(rows_tokens.size(), ref.size());
    const size_t span_begin = prompt.demo7_output_span.begin;
    const size_t n_src = prompt.demo7_output_span.end - span_begin;

    InfluenceGrid grid;
    grid.layer = layer;
    grid.note =
        "rows teacher-force the natural zero-shot generation; correctness is against the test "
        "record's true JSON tokens";
    for (size_t i = 0; i < n_rows; ++i) grid.rows.push_back(rows_tokens.texts[i]);
    for (size_t j = 0; j < n_src; ++j)
        grid.cols.push_back(prompt.fewshot.tokens.texts[span_begin + j]);
    grid.cols.push_back("NATURAL");

    backend::GenerationParams step_params;
    step_params.max_tokens = 1;
    step_params.stop_texts.clear();

    for (size_t i = 0; i < n_rows; ++i) {
        std::vector<int> row(n_src + 1, 0);
        backend::TokenSeq forced = with_prefix(prompt.zeroshot.tokens, rows_tokens, i);
        for (size_t j = 0; j < n_src; ++j) {
            backend::InterventionSpec iv;
            iv.layer = layer;
            iv.position = forced.size() - 1;
            iv.vector = capture.state(layer, span_begin + j);
            try {
                backend::GenerationResult step = b.generate(forced, {iv}, step_params);
                row[j] = step.tokens.ids.at(0) == ref.ids[i] ? 1 : 0;
            } catch (const std::exception& e) {
                grid.audit.push_back("row " + std::to_string(i) + " col " + std::to_string(j) +
                                     ": " + e.what());
            }
        }
        row[n_src] = rows_tokens.ids[i] == ref.ids[i] ? 1 : 0;
        grid.cells.push_back(std::move(row));
    }
    return grid;
}

std::string grid_csv(const InfluenceGrid& grid) {
    report::CsvWriter csv;
    std::vector<std::string> header = {"row_token"};
    header.insert(header.end(), grid.cols.begin(), grid.cols.end());
    csv.row(header);
    for (size_t i = 0; i < grid.cells.size(); ++i) {
        std::vector<std::string> row = {grid.rows[i]};
        for (int c : grid.cells[i]) row.push_back(std::to_string(c));
        csv.row(row);
    }
    return csv.str();
}

std::string grid_meta_json(const InfluenceGrid& grid) {
    nlohmann::ordered_json j;
    j["layer"] = grid.layer;
    j["note"] = grid.note;
    j["rows"] = grid.rows.size();
    j["cols"] = grid.cols.size();
    j["audit"] = grid.audit;
    return j.dump(2) + "\n";
}

}  // namespace taskvec::compositional
