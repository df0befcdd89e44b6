#pragma once

#include <string>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/compositional/prompt.hpp"

namespace taskvec::compositional {

// Token-level influence of demo 7's output states on the zero-shot
// generation. Rows are the natural zero-shot generation's tokens; columns are
// demo 7's output tokens plus one trailing NATURAL column. Cell (i, j) = 1
// iff, with the natural generation teacher-forced through step i and the
// state at (layer, current position) replaced by the few-shot state captured
// at column j, the greedy next token equals the test record's true JSON token
// for step i. The NATURAL column scores plain generation against the same
// reference.
struct InfluenceGrid {
    std::vector<std::string> rows;  // token surfaces of the zero-shot generation
    std::vector<std::string> cols;  // demo 7 output token surfaces + "NATURAL"
    std::vector<std::vector<int>> cells;
    int layer = -1;
    // Cells whose forward pass failed stay 0 in the binary matrix and are
    // reported here instead ("row i col j: what happened").
    std::vector<std::string> audit;
    std::string note;  // records the teacher-forcing convention
};

InfluenceGrid influence_grid(const backend::Backend& b, const CompositionalPrompt& prompt,
                             int layer);

// cells as rows x cols CSV with labels.
std::string grid_csv(const InfluenceGrid& grid);

// layer / note / audit sidecar, JSON.
std::string grid_meta_json(const InfluenceGrid& grid);

}  // namespace taskvec::compositional
