#pragma once

#include <string>
#include <vector>

#include "taskvec/experiments/results.hpp"

namespace taskvec::experiments {

struct RegionThresholds {
    double r1_min_boost = 4.0;
    double r1_max_deficit = 2.0;
    double r2_max_boost = 1.0;
    double r2_min_deficit = 4.0;
};

// Per-task position in the boost/deficit plane at one layer:
//   boost   = mean task-vector correctness - mean zero-shot correctness
//   deficit = mean few-shot correctness    - mean task-vector correctness
// region is "1" (large boost, small deficit), "2" (small boost, large
// deficit), or "" for everything in between.
struct RegionPoint {
    std::string task_id;
    std::string category;
    double boost = 0.0;
    double deficit = 0.0;
    double zero_shot = 0.0;
    double few_shot = 0.0;
    double task_vector = 0.0;
    std::string region;
};

struct RegionAnalysis {
    int layer = -1;
    std::vector<RegionPoint> points;
    // Tasks skipped because a condition had no successful rows.
    std::vector<std::string> skipped;
};

RegionAnalysis region_analysis(const std::vector<EpisodeResult>& rows, int layer,
                               const RegionThresholds& thresholds = {});

std::string region_points_csv(const RegionAnalysis& analysis);

}  // namespace taskvec::experiments
