#pragma once

#include <cstdint>
#include <vector>

#include "taskvec/dataset/types.hpp"

namespace taskvec::engine {

// One few-shot evaluation unit: which pairs serve as demos (in presentation
// order) and which held-out pair is the test query.
struct Episode {
    std::string task_id;
    std::vector<size_t> shot_indices;
    size_t test_index = 0;
    std::uint64_t seed = 0;  // per-episode derived seed, for provenance
};

// n episodes of k shots plus one test pair, drawn uniformly without
// replacement from the task's pairs. Deterministic and platform-stable for a
// fixed (task_id, seed). Throws spec_error when the task has fewer than k+1
// pairs.
std::vector<Episode> sample_episodes(const dataset::TaskRecord& task, size_t n, size_t k,
                                     std::uint64_t seed);

// The demo pairs of an episode, in draw order.
std::vector<dataset::ExamplePair> episode_shots(const dataset::TaskRecord& task,
                                                const Episode& episode);

}  // namespace taskvec::engine
