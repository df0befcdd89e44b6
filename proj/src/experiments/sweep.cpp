#include "taskvec/experiments/sweep.hpp"

#include "taskvec/common/errors.hpp"
#include "taskvec/engine/episodes.hpp"
#include "taskvec/engine/task_vector.hpp"

namespace taskvec::experiments {

namespace {

EpisodeResult base_row(const dataset::TaskRecord& task, const engine::Episode& ep,
                       size_t episode_index) {
    EpisodeResult r;
    r.task_id = task.task_id;
    r.category = task.category;
    r.episode_index = episode_index;
    r.episode_seed = ep.seed;
    return r;
}

}  // namespace

SweepResult run_layer_sweep(const dataset::TaskSet& set, const backend::Backend& b,
                            judge::Judge& judge, const SweepOptions& options) {
    std::vector<int> layers = options.layers;
    if (layers.empty())
        for (int l = 0; l < b.num_layers(); ++l) layers.push_back(l);
    for (int l : layers)
        if (l < 0 || l >= b.num_layers())
            throw spec_error("sweep layer " + std::to_string(l) + " outside the backend's 0.." +
                             std::to_string(b.num_layers() - 1));

    for (const auto& task : set.tasks) {
        auto violations = dataset::validate_task(task, dataset::Grade::episode);
        if (!violations.empty())
            throw spec_error("task '" + task.task_id + "' is not episode-grade: " +
                             violations.front().code + ": " + violations.front().message);
    }

    SweepResult result;
    for (const auto& task : set.tasks) {
        auto episodes =
            engine::sample_episodes(task, options.episodes_per_task, options.k_shots, options.seed);
        for (size_t e = 0; e < episodes.size(); ++e) {
            const auto& ep = episodes[e];
            const auto& test_pair = task.pairs.at(ep.test_index);

            judge::JudgeRequest jreq;
            jreq.instruction = task.instruction;
            jreq.sample_input = test_pair.input;
            jreq.expected_output = test_pair.output;

            auto score_into = [&](EpisodeResult& row, const backend::GenerationResult& gen) {
                row.output = backend::output_text(gen, options.generation);
                jreq.submission = row.output;
                try {
                    row.scores = judge.score(jreq);
                } catch (const error& err) {
                    row.failed = true;
                    row.error = err.what();
                }
            };

            // Few-shot pass: one render, one capture for every layer.
            EpisodeResult few = base_row(task, ep, e);
            few.condition = Condition::few_shot;
            std::optional<engine::RenderedPrompt> fewshot;
            std::optional<backend::HiddenCapture> capture;
            try {
                fewshot = engine::render_fewshot(b, engine::episode_shots(task, ep),
                                                 test_pair.input, options.prompt_template);
                capture = b.forward_capture(fewshot->tokens);
                score_into(few, b.generate(fewshot->tokens, {}, options.generation));
            } catch (const error& err) {
                few.failed = true;
                few.error = err.what();
            }

            EpisodeResult zero = base_row(task, ep, e);
            zero.condition = Condition::zero_shot;
            std::optional<engine::RenderedPrompt> zeroshot;
            try {
                zeroshot = engine::render_zeroshot(b, test_pair.input, options.prompt_template);
                score_into(zero, b.generate(zeroshot->tokens, {}, options.generation));
            } catch (const error& err) {
                zero.failed = true;
                zero.error = err.what();
            }

            result.rows.push_back(zero);
            result.rows.push_back(few);

            for (int layer : layers) {
                EpisodeResult tv_row = base_row(task, ep, e);
                tv_row.condition = Condition::task_vector;
                tv_row.layer = layer;
                if (!fewshot || !capture || !zeroshot) {
                    tv_row.failed = true;
                    tv_row.error = "few-shot or zero-shot pass unavailable for this episode";
                    result.rows.push_back(tv_row);
                    continue;
                }
                try {
                    auto tv = engine::extract_task_vector(*capture, *fewshot, layer);
                    score_into(tv_row, engine::inject_and_generate(b, *zeroshot, tv,
                                                                   options.generation));
                } catch (const error& err) {
                    tv_row.failed = true;
                    tv_row.error = err.what();
                }
                result.rows.push_back(tv_row);
            }
        }
    }

    result.summary = aggregate(result.rows, set.tasks.size(), options.episodes_per_task,
                               options.failure_threshold);
    return result;
}

SweepResult fix_layer_and_run(const dataset::TaskSet& set, const backend::Backend& b,
                              judge::Judge& judge, int layer, SweepOptions options) {
    if (layer < 0 || layer >= b.num_layers())
        throw spec_error("layer " + std::to_string(layer) + " outside the backend's 0.." +
                         std::to_string(b.num_layers() - 1));
    options.layers = {layer};
    return run_layer_sweep(set, b, judge, options);
}

}  // namespace taskvec::experiments
