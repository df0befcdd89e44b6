#include "taskvec/engine/episodes.hpp"

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"
#include "taskvec/common/rng.hpp"

namespace taskvec::engine {

std::vector<Episode> sample_episodes(const dataset::TaskRecord& task, size_t n, size_t k,
                                     std::uint64_t seed) {
    if (task.pairs.size() < k + 1)
        throw spec_error("task '" + task.task_id + "' has " + std::to_string(task.pairs.size()) +
                         " pairs, needs at least " + std::to_string(k + 1) +
                         " for " + std::to_string(k) + "-shot episodes");

    std::uint64_t stream = mix_seed(seed, fnv1a64(task.task_id));
    SplitMix64 rng(stream);
    std::vector<Episode> out;
    out.reserve(n);
    for (size_t e = 0; e < n; ++e) {
        auto draw = sample_distinct(rng, task.pairs.size(), k + 1);
        Episode ep;
        ep.task_id = task.task_id;
        ep.shot_indices.assign(draw.begin(), draw.end() - 1);
        ep.test_index = draw.back();
        ep.seed = mix_seed(stream, e);
        out.push_back(std::move(ep));
    }
    return out;
}

std::vector<dataset::ExamplePair> episode_shots(const dataset::TaskRecord& task,
                                                const Episode& episode) {
    std::vector<dataset::ExamplePair> shots;
    shots.reserve(episode.shot_indices.size());
    for (size_t idx : episode.shot_indices) shots.push_back(task.pairs.at(idx));
    return shots;
}

}  // namespace taskvec::engine
