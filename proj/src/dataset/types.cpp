#include "taskvec/dataset/types.hpp"

#include <algorithm>
#include <set>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::dataset {

std::string to_string(Source s) {
    switch (s) {
        case Source::alpaca_derived: return "alpaca-derived";
        case Source::synthetic: return "synthetic";
        case Source::fixture: return "fixture";
    }
    throw spec_error("unknown source value");
}

Source source_from_string(const std::string& s) {
    if (s == "alpaca-derived") return Source::alpaca_derived;
    if (s == "synthetic") return Source::synthetic;
    if (s == "fixture") return Source::fixture;
    throw parse_error("unknown task source: '" + s + "'");
}

namespace {

const std::string kEdgePunct = ".,:;!?\"'";

std::string strip_edge_punct(const std::string& word) {
    size_t b = 0;
    size_t e = word.size();
    while (b < e && kEdgePunct.find(word[b]) != std::string::npos) ++b;
    while (e > b && kEdgePunct.find(word[e - 1]) != std::string::npos) --e;
    return word.substr(b, e - b);
}

}  // namespace

std::string derive_category(const std::string& instruction) {
    auto words = split_words(instruction);
    if (words.empty())
        throw spec_error("cannot derive a category from an empty instruction");
    std::string head = strip_edge_punct(words.front());
    if (head.empty())
        throw spec_error("cannot derive a category: first word of '" +
                         trim(instruction).substr(0, 40) + "' is all punctuation");
    return to_lower(head);
}

std::string make_task_id(const std::string& instruction) {
    return content_hash(instruction);
}

std::vector<Violation> validate_task(const TaskRecord& record, Grade grade) {
    std::vector<Violation> out;

    if (trim(record.instruction).empty())
        out.push_back({"empty-instruction", "instruction is empty", std::nullopt});

    size_t need = grade == Grade::dataset ? 30 : 8;
    if (record.pairs.size() < need)
        out.push_back({"pair-count",
                       "record has " + std::to_string(record.pairs.size()) +
                           " pairs, needs " + std::to_string(need),
                       std::nullopt});

    std::set<std::string> seen_inputs;
    for (size_t i = 0; i < record.pairs.size(); ++i) {
        const auto& p = record.pairs[i];
        std::string in = trim(p.input);
        if (in.empty())
            out.push_back({"empty-input", "pair input is empty after trimming", i});
        if (trim(p.output).empty())
            out.push_back({"empty-output", "pair output is empty after trimming", i});
        if (!in.empty() && !seen_inputs.insert(in).second)
            out.push_back({"duplicate-input", "pair input '" + in + "' repeats", i});
    }

    if (!trim(record.instruction).empty()) {
        try {
            std::string expect = derive_category(record.instruction);
            if (record.category != expect)
                out.push_back({"category-mismatch",
                               "category '" + record.category + "' does not match derived '" +
                                   expect + "'",
                               std::nullopt});
        } catch (const error& e) {
            out.push_back({"category-mismatch", e.what(), std::nullopt});
        }
    }

    return out;
}

std::map<std::string, size_t> tally_categories(const TaskSet& set) {
    std::map<std::string, size_t> tally;
    for (const auto& t : set.tasks) ++tally[t.category];
    return tally;
}

std::map<std::string, size_t> bucket_categories(const TaskSet& set, size_t top_n) {
    auto tally = tally_categories(set);

    std::vector<std::pair<std::string, size_t>> ranked(tally.begin(), tally.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::map<std::string, size_t> out;
    size_t other = 0;
    for (size_t i = 0; i < ranked.size(); ++i) {
        if (i < top_n)
            out[ranked[i].first] += ranked[i].second;
        else
            other += ranked[i].second;
    }
    if (other > 0) out["other"] += other;
    return out;
}

}  // namespace taskvec::dataset
