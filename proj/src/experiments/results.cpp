#include "taskvec/experiments/results.hpp"

#include <sstream>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::experiments {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Condition c) {
    switch (c) {
        case Condition::zero_shot: return "zero_shot";
        case Condition::few_shot: return "few_shot";
        case Condition::task_vector: return "task_vector";
    }
    throw spec_error("unknown condition value");
}

Condition condition_from_string(const std::string& s) {
    if (s == "zero_shot") return Condition::zero_shot;
    if (s == "few_shot") return Condition::few_shot;
    if (s == "task_vector") return Condition::task_vector;
    throw parse_error("unknown condition: '" + s + "'");
}

SweepSummary aggregate(const std::vector<EpisodeResult>& rows, size_t n_tasks,
                       size_t n_episodes, double failure_threshold) {
    SweepSummary s;
    s.n_tasks = n_tasks;
    s.n_episodes = n_episodes;
    s.failure_threshold = failure_threshold;
    s.rows_processed = rows.size();

    struct Acc {
        size_t n = 0;
        double format = 0.0;
        double correctness = 0.0;
        void add(const judge::ScorePair& sp) {
            ++n;
            format += sp.format;
            correctness += sp.correctness;
        }
        MeanScores mean() const {
            MeanScores m;
            m.n = n;
            if (n > 0) {
                m.format = format / static_cast<double>(n);
                m.correctness = correctness / static_cast<double>(n);
            }
            return m;
        }
    };

    std::map<int, Acc> per_layer;
    std::map<int, std::map<std::string, Acc>> per_layer_cat;
    Acc zero, few;

    for (const auto& r : rows) {
        if (r.failed) {
            ++s.rows_failed;
            continue;
        }
        switch (r.condition) {
            case Condition::zero_shot: zero.add(r.scores); break;
            case Condition::few_shot: few.add(r.scores); break;
            case Condition::task_vector:
                per_layer[r.layer].add(r.scores);
                per_layer_cat[r.layer][r.category].add(r.scores);
                break;
        }
    }

    s.zero_shot = zero.mean();
    s.few_shot = few.mean();
    for (const auto& [layer, acc] : per_layer) s.per_layer[layer] = acc.mean();
    for (const auto& [layer, cats] : per_layer_cat)
        for (const auto& [cat, acc] : cats) s.per_layer_category[layer][cat] = acc.mean();

    if (s.rows_processed > 0)
        s.failure_flag = static_cast<double>(s.rows_failed) >
                         failure_threshold * static_cast<double>(s.rows_processed);
    return s;
}

std::string serialize_rows(const std::vector<EpisodeResult>& rows) {
    std::ostringstream out;
    for (const auto& r : rows) {
        ordered_json j;
        j["task_id"] = r.task_id;
        j["category"] = r.category;
        j["episode"] = r.episode_index;
        j["episode_seed"] = r.episode_seed;
        j["condition"] = to_string(r.condition);
        j["layer"] = r.layer;
        j["output"] = r.output;
        j["format"] = r.failed ? -1 : r.scores.format;
        j["correct"] = r.failed ? -1 : r.scores.correctness;
        j["failed"] = r.failed;
        j["error"] = r.error;
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<EpisodeResult> parse_rows_jsonl(const std::string& text) {
    std::vector<EpisodeResult> rows;
    size_t line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("rows line " + std::to_string(line_no) + ": " + e.what());
        }
        EpisodeResult r;
        r.task_id = j.at("task_id").get<std::string>();
        r.category = j.at("category").get<std::string>();
        r.episode_index = j.at("episode").get<size_t>();
        r.episode_seed = j.at("episode_seed").get<std::uint64_t>();
        r.condition = condition_from_string(j.at("condition").get<std::string>());
        r.layer = j.at("layer").get<int>();
        r.output = j.at("output").get<std::string>();
        r.failed = j.at("failed").get<bool>();
        if (!r.failed) {
            r.scores.format = j.at("format").get<int>();
            r.scores.correctness = j.at("correct").get<int>();
        }
        r.error = j.at("error").get<std::string>();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string serialize_summary(const SweepSummary& s) {
    ordered_json j;
    j["n_tasks"] = s.n_tasks;
    j["n_episodes"] = s.n_episodes;
    j["rows_processed"] = s.rows_processed;
    j["rows_failed"] = s.rows_failed;
    j["failure_threshold"] = s.failure_threshold;
    j["failure_flag"] = s.failure_flag;

    auto mean_json = [](const MeanScores& m) {
        ordered_json o;
        o["n"] = m.n;
        o["format"] = m.format;
        o["correctness"] = m.correctness;
        return o;
    };

    j["baselines"] = ordered_json::object();
    j["baselines"]["zero_shot"] = mean_json(s.zero_shot);
    j["baselines"]["few_shot"] = mean_json(s.few_shot);

    auto layers = ordered_json::array();
    for (const auto& [layer, m] : s.per_layer) {
        ordered_json o = mean_json(m);
        o["layer"] = layer;
        layers.push_back(std::move(o));
    }
    j["per_layer"] = std::move(layers);

    auto by_cat = ordered_json::array();
    for (const auto& [layer, cats] : s.per_layer_category) {
        for (const auto& [cat, m] : cats) {
            ordered_json o = mean_json(m);
            o["layer"] = layer;
            o["category"] = cat;
            by_cat.push_back(std::move(o));
        }
    }
    j["per_layer_category"] = std::move(by_cat);
    return j.dump(2) + "\n";
}

}  // namespace taskvec::experiments
