#include "taskvec/compositional/strategies.hpp"

#include "taskvec/common/errors.hpp"
#include "taskvec/common/rng.hpp"
#include "taskvec/report/csv.hpp"

namespace taskvec::compositional {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::natural: return "natural";
        case Strategy::classic: return "classic";
        case Strategy::subtask: return "subtask";
    }
    throw spec_error("unknown strategy");
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "natural") return Strategy::natural;
    if (name == "classic") return Strategy::classic;
    if (name == "subtask") return Strategy::subtask;
    throw config_error("unknown strategy \"" + name + "\"");
}

StrategyResult strategy_eval(const backend::Backend& b, const AttributePools& pools,
                             const StrategyOptions& options, Strategy strategy) {
    if (options.n_pairs < 1) throw spec_error("strategy_eval needs n_pairs >= 1");
    if (options.layer < 0 || options.layer >= b.num_layers())
        throw spec_error("layer " + std::to_string(options.layer) +
                         " out of range for backend with " + std::to_string(b.num_layers()) +
                         " layers");

    StrategyResult result;
    result.strategy = strategy;
    std::array<double, 6> sums{};

    backend::GenerationParams step_params;
    step_params.max_tokens = 1;
    step_params.stop_texts.clear();

    for (int pair = 0; pair < options.n_pairs; ++pair) {
        try {
            std::vector<CarRecord> records =
                gen_car_records(pools, mix_seed(options.seed, static_cast<std::uint64_t>(pair)), 8);
            CompositionalPrompt prompt =
                build_compositional_prompt(b, records, options.prompt_template, pools.style);
            backend::HiddenCapture capture = b.forward_capture(prompt.fewshot.tokens);

            std::array<double, 6> probs{};
            for (size_t r = 0; r < kAllRoles.size(); ++r) {
                const Role role = kAllRoles[r];
                const size_t step = prompt.reference.role_step(role);
                backend::TokenSeq forced = prompt.zeroshot.tokens;
                for (size_t i = 0; i < step; ++i)
                    forced.push_back(prompt.reference.tokens.ids[i],
                                     prompt.reference.tokens.texts[i]);

                std::vector<backend::InterventionSpec> interventions;
                if (strategy == Strategy::classic) {
                    backend::InterventionSpec iv;
                    iv.layer = options.layer;
                    iv.position = prompt.zeroshot.separator_position;
                    iv.vector =
                        capture.state(options.layer, prompt.fewshot.separator_position);
                    interventions.push_back(std::move(iv));
                } else if (strategy == Strategy::subtask) {
                    backend::InterventionSpec iv;
                    iv.layer = options.layer;
                    iv.position = forced.size() - 1;
                    iv.vector =
                        capture.state(options.layer, align_subtask_source(prompt, role));
                    interventions.push_back(std::move(iv));
                }

                backend::GenerationResult step_result =
                    b.generate(forced, interventions, step_params);
                const int target = prompt.reference.tokens.ids[step];
                probs[r] = step_result.distributions.at(0)(target);
            }
            for (size_t r = 0; r < probs.size(); ++r) sums[r] += probs[r];
            ++result.n_pairs;
        } catch (const std::exception& e) {
            ++result.n_failed;
            result.failures.push_back("pair " + std::to_string(pair) + ": " + e.what());
        }
    }
    if (result.n_pairs > 0)
        for (size_t r = 0; r < sums.size(); ++r)
            result.mean_probability[r] = sums[r] / result.n_pairs;
    return result;
}

std::string strategies_csv(const std::vector<StrategyResult>& results) {
    report::CsvWriter csv;
    csv.row({"role", "strategy", "mean_probability", "n_pairs", "n_failed"});
    for (size_t r = 0; r < kAllRoles.size(); ++r)
        for (const auto& result : results)
            csv.row({role_name(kAllRoles[r]), strategy_name(result.strategy),
                     report::csv_num(result.mean_probability[r]), std::to_string(result.n_pairs),
                     std::to_string(result.n_failed)});
    return csv.str();
}

}  // namespace taskvec::compositional
