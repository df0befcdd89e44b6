#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/compositional/prompt.hpp"
#include "taskvec/compositional/records.hpp"
#include "taskvec/engine/template.hpp"

namespace taskvec::compositional {

enum class Strategy { natural, classic, subtask };

const char* strategy_name(Strategy s);
Strategy strategy_from_string(const std::string& name);

// Mean probability assigned to the true token at each of the six roles,
// teacher-forcing the true prefix between steps, over n_pairs prompts.
struct StrategyResult {
    Strategy strategy = Strategy::natural;
    std::array<double, 6> mean_probability{};  // indexed like kAllRoles
    int n_pairs = 0;                           // pairs that evaluated cleanly
    int n_failed = 0;
    std::vector<std::string> failures;
};

struct StrategyOptions {
    int n_pairs = 20;
    int layer = 0;
    std::uint64_t seed = 0;
    engine::PromptTemplate prompt_template;
};

// natural: no intervention. classic: the few-shot prompt's final separator
// state injected at the zero-shot separator, held for every step. subtask:
// at each role step, demo 7's state at the aligned punctuation token injected
// at the current last position.
StrategyResult strategy_eval(const backend::Backend& b, const AttributePools& pools,
                             const StrategyOptions& options, Strategy strategy);

// role,strategy,mean_probability rows for one or more results.
std::string strategies_csv(const std::vector<StrategyResult>& results);

}  // namespace taskvec::compositional
