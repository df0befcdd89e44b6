#include "taskvec/report/run_dir.hpp"

#include <filesystem>

#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/report/csv.hpp"

namespace taskvec::report {

namespace fs = std::filesystem;

void create_run_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw spec_error("cannot create run directory " + dir + ": " + ec.message());
    for (const auto& entry : fs::directory_iterator(p)) {
        (void)entry;
        throw spec_error("run directory " + dir + " is not empty; refusing to overwrite");
    }
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool_version"] = manifest.tool_version;
    j["command"] = manifest.command;
    j["backend_id"] = manifest.backend_id;
    j["judge_kind"] = manifest.judge_kind;
    j["seed"] = manifest.seed;
    j["separator"] = manifest.separator;
    j["layers"] = manifest.layers;
    return j.dump(2) + "\n";
}

void write_run_preamble(const std::string& dir, const std::string& config_text,
                        const RunManifest& manifest) {
    write_text_file((fs::path(dir) / "config.json").string(),
                    config_text.empty() ? "{}\n" : config_text);
    write_text_file((fs::path(dir) / "manifest.json").string(), manifest_json(manifest));
}

}  // namespace taskvec::report
