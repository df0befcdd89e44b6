#pragma once

#include <optional>
#include <string>

#include "taskvec/dataset/types.hpp"

namespace taskvec::dataset {

// On-disk bundle: UTF-8, line-delimited. The first line is a header object
// carrying the format version and the category manifest; every following line
// is one task record with fields in the fixed order
//   task_id, instruction, category, source, generator, pairs
// so identical sets serialize byte-identically.
std::string serialize_taskset(const TaskSet& set);
void save_taskset(const TaskSet& set, const std::string& path);

// Parse failures name the offending line. Structural invariants (unique ids,
// manifest tally, category consistency, distinct inputs) are always enforced;
// pair-count grade checks run when `grade` is given.
TaskSet parse_taskset(const std::string& text, std::optional<Grade> grade = std::nullopt);
TaskSet load_taskset(const std::string& path, std::optional<Grade> grade = std::nullopt);

}  // namespace taskvec::dataset
