#include "taskvec/dataset/bundle.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::dataset {

using ordered_json = nlohmann::ordered_json;

std::string serialize_taskset(const TaskSet& set) {
    std::ostringstream out;

    ordered_json header;
    header["version"] = set.version;
    ordered_json manifest = ordered_json::object();
    for (const auto& [cat, n] : set.manifest) manifest[cat] = n;
    header["manifest"] = manifest;
    out << header.dump() << "\n";

    for (const auto& t : set.tasks) {
        ordered_json rec;
        rec["task_id"] = t.task_id;
        rec["instruction"] = t.instruction;
        rec["category"] = t.category;
        rec["source"] = to_string(t.source);
        rec["generator"] = t.generator;
        ordered_json pairs = ordered_json::array();
        for (const auto& p : t.pairs) {
            ordered_json pj;
            pj["input"] = p.input;
            pj["output"] = p.output;
            pairs.push_back(std::move(pj));
        }
        rec["pairs"] = std::move(pairs);
        out << rec.dump() << "\n";
    }
    return out.str();
}

void save_taskset(const TaskSet& set, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open '" + path + "' for writing");
    f << serialize_taskset(set);
    if (!f) throw error("failed writing task set to '" + path + "'");
}

namespace {

std::string require_string(const ordered_json& j, const char* key, size_t line_no) {
    if (!j.contains(key) || !j[key].is_string())
        throw parse_error("line " + std::to_string(line_no) + ": missing string field '" +
                          key + "'");
    return j[key].get<std::string>();
}

}  // namespace

TaskSet parse_taskset(const std::string& text, std::optional<Grade> grade) {
    auto lines = split_lines(text);
    if (lines.empty()) throw parse_error("task set file is empty");

    TaskSet set;
    ordered_json header;
    try {
        header = ordered_json::parse(lines[0]);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("line 1: bad header: ") + e.what());
    }
    if (!header.contains("version") || !header.contains("manifest"))
        throw parse_error("line 1: header must carry version and manifest");
    set.version = header["version"].get<std::string>();
    for (const auto& [cat, n] : header["manifest"].items())
        set.manifest[cat] = n.get<size_t>();

    std::set<std::string> seen_ids;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        size_t line_no = i + 1;
        ordered_json rec;
        try {
            rec = ordered_json::parse(lines[i]);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("line " + std::to_string(line_no) + ": bad record: " + e.what());
        }

        TaskRecord t;
        t.task_id = require_string(rec, "task_id", line_no);
        t.instruction = require_string(rec, "instruction", line_no);
        t.category = require_string(rec, "category", line_no);
        t.source = source_from_string(require_string(rec, "source", line_no));
        if (rec.contains("generator")) t.generator = rec["generator"].get<std::string>();
        if (!rec.contains("pairs") || !rec["pairs"].is_array())
            throw parse_error("line " + std::to_string(line_no) + ": missing pairs array");
        for (const auto& pj : rec["pairs"]) {
            ExamplePair p;
            p.input = pj.at("input").get<std::string>();
            p.output = pj.at("output").get<std::string>();
            t.pairs.push_back(std::move(p));
        }

        if (!seen_ids.insert(t.task_id).second)
            throw integrity_error("line " + std::to_string(line_no) + ": duplicate task_id '" +
                                  t.task_id + "'");
        set.tasks.push_back(std::move(t));
    }

    auto tally = tally_categories(set);
    if (tally != set.manifest) {
        std::ostringstream msg;
        msg << "manifest does not match record tally (manifest lists ";
        size_t total = 0;
        for (const auto& [_, n] : set.manifest) total += n;
        msg << total << " tasks across " << set.manifest.size() << " categories, records hold "
            << set.tasks.size() << ")";
        throw integrity_error(msg.str());
    }

    for (const auto& t : set.tasks) {
        auto violations = validate_task(t, grade.value_or(Grade::episode));
        for (const auto& v : violations) {
            bool structural = v.code != "pair-count";
            if (structural || grade.has_value())
                throw integrity_error("task '" + t.task_id + "': " + v.code + ": " + v.message);
        }
    }

    return set;
}

TaskSet load_taskset(const std::string& path, std::optional<Grade> grade) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("cannot open task set '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_taskset(buf.str(), grade);
}

}  // namespace taskvec::dataset
