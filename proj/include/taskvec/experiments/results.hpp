#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taskvec/judge/judge.hpp"

namespace taskvec::experiments {

enum class Condition { zero_shot, few_shot, task_vector };

std::string to_string(Condition c);
Condition condition_from_string(const std::string& s);

// One scored generation. `layer` is meaningful only for the task_vector
// condition (-1 otherwise). A failed row keeps its error text and is excluded
// from every mean.
struct EpisodeResult {
    std::string task_id;
    std::string category;
    size_t episode_index = 0;
    std::uint64_t episode_seed = 0;
    Condition condition = Condition::zero_shot;
    int layer = -1;
    std::string output;
    judge::ScorePair scores;
    bool failed = false;
    std::string error;
};

struct MeanScores {
    size_t n = 0;
    double format = 0.0;
    double correctness = 0.0;
};

struct SweepSummary {
    size_t n_tasks = 0;
    size_t n_episodes = 0;        // episodes per task
    size_t rows_processed = 0;    // succeeded + failed
    size_t rows_failed = 0;
    bool failure_flag = false;    // failed fraction above the threshold
    double failure_threshold = 0.1;
    std::map<int, MeanScores> per_layer;
    std::map<int, std::map<std::string, MeanScores>> per_layer_category;
    MeanScores zero_shot;
    MeanScores few_shot;
};

// Means over the non-failed rows; rows_processed must reconcile as
// succeeded + failed.
SweepSummary aggregate(const std::vector<EpisodeResult>& rows, size_t n_tasks,
                       size_t n_episodes, double failure_threshold = 0.1);

// Byte-stable JSONL for raw rows, one object per row.
std::string serialize_rows(const std::vector<EpisodeResult>& rows);
std::vector<EpisodeResult> parse_rows_jsonl(const std::string& text);

std::string serialize_summary(const SweepSummary& summary);

}  // namespace taskvec::experiments
