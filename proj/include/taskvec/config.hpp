#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "taskvec/backend/types.hpp"
#include "taskvec/engine/template.hpp"
#include "taskvec/experiments/regions.hpp"
#include "taskvec/judge/judge.hpp"
#include "taskvec/pipeline/client.hpp"

namespace taskvec {

struct BackendConfig {
    std::string kind = "toy";  // "toy" | "real"
    std::string model_name;    // real backends only
    size_t context_limit = 512;
};

// How to reach an LLM over the wire, or how to replay one from fixtures.
struct ClientConfig {
    std::string mode = "replay";  // "replay" | "live" | "record"
    std::string fixture_dir;      // replay and record modes
    std::string endpoint;
    std::string model;
    std::string api_key_env = "TASKVEC_API_KEY";  // name of the env var, never the key
    int timeout_ms = 30000;
    int retry_attempts = 3;
    int retry_base_delay_ms = 250;
};

struct JudgeConfig {
    std::string kind = "oracle";  // "oracle" | "llm"
    ClientConfig client;
    int max_attempts = 2;
};

struct PipelineConfig {
    ClientConfig client;
    int num_examples = 30;
    int keep_pairs = 30;
    int chunk_size = 20;
    int workers = 1;
};

struct CompositionalConfig {
    int layer = -1;  // -1 = auto: the toy encoding layer, or 15 on a real model
    int n_pairs = 20;
    std::string pools = "toy";  // "toy" | "car"
    std::uint64_t seed = 0;
};

// Everything the CLI commands read. Every field has a default, so an empty
// config file is valid.
struct RunConfig {
    BackendConfig backend;
    JudgeConfig judge;
    PipelineConfig pipeline;
    CompositionalConfig compositional;
    engine::PromptTemplate prompt_template;
    backend::GenerationParams generation;
    std::vector<int> layers;  // empty = every backend layer
    int episodes_per_task = 10;
    int k_shots = 7;
    std::uint64_t seed = 0;
    double failure_threshold = 0.1;
    experiments::RegionThresholds regions;
    std::string dataset_path;  // empty = built-in toy letter tasks
    std::string out_dir = "runs/out";
};

// Strict parse: unknown keys and wrong-typed values are config_error, so a
// typoed field can never silently fall back to its default.
RunConfig parse_config(const std::string& text);

struct LoadedConfig {
    RunConfig config;
    std::string raw_text;  // verbatim bytes for the run-directory snapshot
};

// Empty path = all defaults with raw_text "{}".
LoadedConfig load_config(const std::string& path);

std::unique_ptr<backend::Backend> backend_from_config(const BackendConfig& config);

std::unique_ptr<pipeline::GeneratorClient> client_from_config(const ClientConfig& config);

// An LLM judge holds a client; keep both alive together.
struct JudgeBundle {
    std::unique_ptr<pipeline::GeneratorClient> client;  // null for the oracle
    std::unique_ptr<judge::Judge> judge;
};

JudgeBundle judge_from_config(const JudgeConfig& config,
                              const std::function<void(const std::string&)>& transcript = nullptr);

// The layer compositional experiments run at: the configured value, or the
// backend-appropriate default when set to auto.
int resolve_compositional_layer(const CompositionalConfig& config, const BackendConfig& backend);

}  // namespace taskvec
