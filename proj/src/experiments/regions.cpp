#include "taskvec/experiments/regions.hpp"

#include <map>
#include <sstream>

#include "taskvec/report/csv.hpp"

namespace taskvec::experiments {

RegionAnalysis region_analysis(const std::vector<EpisodeResult>& rows, int layer,
                               const RegionThresholds& thresholds) {
    struct Acc {
        size_t n = 0;
        double sum = 0.0;
        void add(int v) {
            ++n;
            sum += v;
        }
        double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    };
    struct PerTask {
        std::string category;
        Acc zero, few, tv;
    };

    // Keyed by task in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, PerTask> tasks;
    for (const auto& r : rows) {
        if (r.failed) continue;
        if (r.condition == Condition::task_vector && r.layer != layer) continue;
        auto it = tasks.find(r.task_id);
        if (it == tasks.end()) {
            order.push_back(r.task_id);
            it = tasks.emplace(r.task_id, PerTask{r.category, {}, {}, {}}).first;
        }
        switch (r.condition) {
            case Condition::zero_shot: it->second.zero.add(r.scores.correctness); break;
            case Condition::few_shot: it->second.few.add(r.scores.correctness); break;
            case Condition::task_vector: it->second.tv.add(r.scores.correctness); break;
        }
    }

    RegionAnalysis out;
    out.layer = layer;
    for (const auto& task_id : order) {
        const auto& t = tasks.at(task_id);
        if (t.zero.n == 0 || t.few.n == 0 || t.tv.n == 0) {
            out.skipped.push_back(task_id);
            continue;
        }
        RegionPoint p;
        p.task_id = task_id;
        p.category = t.category;
        p.zero_shot = t.zero.mean();
        p.few_shot = t.few.mean();
        p.task_vector = t.tv.mean();
        p.boost = p.task_vector - p.zero_shot;
        p.deficit = p.few_shot - p.task_vector;
        if (p.boost >= thresholds.r1_min_boost && p.deficit <= thresholds.r1_max_deficit)
            p.region = "1";
        else if (p.boost <= thresholds.r2_max_boost && p.deficit >= thresholds.r2_min_deficit)
            p.region = "2";
        out.points.push_back(std::move(p));
    }
    return out;
}

std::string region_points_csv(const RegionAnalysis& analysis) {
    report::CsvWriter csv;
    csv.row({"task_id", "category", "zero_shot", "few_shot", "task_vector", "boost", "deficit",
             "region"});
    for (const auto& p : analysis.points)
        csv.row({p.task_id, p.category, report::csv_num(p.zero_shot), report::csv_num(p.few_shot),
                 report::csv_num(p.task_vector), report::csv_num(p.boost),
                 report::csv_num(p.deficit), p.region});
    return csv.str();
}

}  // namespace taskvec::experiments
