#pragma once

#include <string>
#include <vector>

namespace taskvec::report {

// Descriptive metadata written alongside run artifacts. Deliberately contains
// no wall-clock fields: re-running with the same inputs must reproduce the
// directory byte for byte.
struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string backend_id;
    std::string judge_kind;
    uint64_t seed = 0;
    std::string separator;
    std::vector<int> layers;
};

// Creates `dir` (parents included), fails if it already contains files.
void create_run_dir(const std::string& dir);

// Snapshots the config text verbatim (or "{}" when no file was given) and
// writes manifest.json. Call before the experiment starts so a crashed run
// still leaves enough on disk to reproduce it.
void write_run_preamble(const std::string& dir, const std::string& config_text,
                        const RunManifest& manifest);

std::string manifest_json(const RunManifest& manifest);

}  // namespace taskvec::report
