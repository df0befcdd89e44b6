#include "taskvec/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "taskvec/backend/toy.hpp"
#include "taskvec/backend/toy_layout.hpp"
#include "taskvec/common/errors.hpp"

namespace taskvec {

namespace {

using nlohmann::json;

// Pulls known keys out of `obj` and complains about anything left over, so
// config typos fail loudly instead of silently meaning "use the default".
class section {
public:
    section(const json& obj, std::string name) : name_(std::move(name)) {
        if (!obj.is_object())
            throw config_error(name_ + " must be an object");
        for (auto it = obj.begin(); it != obj.end(); ++it) remaining_[it.key()] = it.value();
    }

    ~section() = default;

    template <typename T>
    void get(const char* key, T& out) {
        auto it = remaining_.find(key);
        if (it == remaining_.end()) return;
        try {
            out = it->second.get<T>();
        } catch (const json::exception&) {
            throw config_error(name_ + "." + key + " has the wrong type");
        }
        remaining_.erase(it);
    }

    json take_object(const char* key) {
        auto it = remaining_.find(key);
        if (it == remaining_.end()) return json::object();
        json value = it->second;
        remaining_.erase(it);
        return value;
    }

    void finish() const {
        if (!remaining_.empty())
            throw config_error("unknown key \"" + remaining_.begin()->first + "\" in " + name_);
    }

private:
    std::string name_;
    std::map<std::string, json> remaining_;
};

ClientConfig parse_client(const json& obj, const std::string& name) {
    ClientConfig c;
    section s(obj, name);
    s.get("mode", c.mode);
    s.get("fixture_dir", c.fixture_dir);
    s.get("endpoint", c.endpoint);
    s.get("model", c.model);
    s.get("api_key_env", c.api_key_env);
    s.get("timeout_ms", c.timeout_ms);
    s.get("retry_attempts", c.retry_attempts);
    s.get("retry_base_delay_ms", c.retry_base_delay_ms);
    s.finish();
    if (c.mode != "replay" && c.mode != "live" && c.mode != "record")
        throw config_error(name + ".mode must be replay, live, or record, not \"" + c.mode +
                           "\"");
    return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    section top(root, "config");

    {
        section s(top.take_object("backend"), "backend");
        s.get("kind", cfg.backend.kind);
        s.get("model_name", cfg.backend.model_name);
        s.get("context_limit", cfg.backend.context_limit);
        s.finish();
        if (cfg.backend.kind != "toy" && cfg.backend.kind != "real")
            throw config_error("backend.kind must be toy or real, not \"" + cfg.backend.kind +
                               "\"");
    }
    {
        json obj = top.take_object("judge");
        section s(obj, "judge");
        json client = s.take_object("client");
        s.get("kind", cfg.judge.kind);
        s.get("max_attempts", cfg.judge.max_attempts);
        s.finish();
        cfg.judge.client = parse_client(client, "judge.client");
        if (cfg.judge.kind != "oracle" && cfg.judge.kind != "llm")
            throw config_error("judge.kind must be oracle or llm, not \"" + cfg.judge.kind +
                               "\"");
        if (cfg.judge.max_attempts < 1) throw config_error("judge.max_attempts must be >= 1");
    }
    {
        json obj = top.take_object("pipeline");
        section s(obj, "pipeline");
        json client = s.take_object("client");
        s.get("num_examples", cfg.pipeline.num_examples);
        s.get("keep_pairs", cfg.pipeline.keep_pairs);
        s.get("chunk_size", cfg.pipeline.chunk_size);
        s.get("workers", cfg.pipeline.workers);
        s.finish();
        cfg.pipeline.client = parse_client(client, "pipeline.client");
    }
    {
        section s(top.take_object("compositional"), "compositional");
        s.get("layer", cfg.compositional.layer);
        s.get("n_pairs", cfg.compositional.n_pairs);
        s.get("pools", cfg.compositional.pools);
        s.get("seed", cfg.compositional.seed);
        s.finish();
        if (cfg.compositional.pools != "toy" && cfg.compositional.pools != "car")
            throw config_error("compositional.pools must be toy or car, not \"" +
                               cfg.compositional.pools + "\"");
    }
    {
        section s(top.take_object("template"), "template");
        s.get("pair_format", cfg.prompt_template.pair_format);
        s.get("pair_joiner", cfg.prompt_template.pair_joiner);
        s.get("query_format", cfg.prompt_template.query_format);
        s.get("separator", cfg.prompt_template.separator);
        s.finish();
    }
    {
        section s(top.take_object("generation"), "generation");
        s.get("max_tokens", cfg.generation.max_tokens);
        s.get("stop_texts", cfg.generation.stop_texts);
        s.finish();
    }
    {
        section s(top.take_object("regions"), "regions");
        s.get("r1_min_boost", cfg.regions.r1_min_boost);
        s.get("r1_max_deficit", cfg.regions.r1_max_deficit);
        s.get("r2_max_boost", cfg.regions.r2_max_boost);
        s.get("r2_min_deficit", cfg.regions.r2_min_deficit);
        s.finish();
    }
    top.get("layers", cfg.layers);
    top.get("episodes_per_task", cfg.episodes_per_task);
    top.get("k_shots", cfg.k_shots);
    top.get("seed", cfg.seed);
    top.get("failure_threshold", cfg.failure_threshold);
    top.get("dataset_path", cfg.dataset_path);
    top.get("out_dir", cfg.out_dir);
    top.finish();

    if (cfg.episodes_per_task < 1) throw config_error("episodes_per_task must be >= 1");
    if (cfg.k_shots < 1) throw config_error("k_shots must be >= 1");
    if (cfg.failure_threshold < 0.0 || cfg.failure_threshold > 1.0)
        throw config_error("failure_threshold must be within [0, 1]");
    return cfg;
}

LoadedConfig load_config(const std::string& path) {
    LoadedConfig out;
    if (path.empty()) {
        out.raw_text = "{}\n";
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    out.raw_text = buf.str();
    out.config = parse_config(out.raw_text);
    return out;
}

std::unique_ptr<backend::Backend> backend_from_config(const BackendConfig& config) {
    if (config.kind == "toy") {
        backend::ToyConfig toy;
        toy.context_limit = config.context_limit;
        return std::make_unique<backend::ToyBackend>(toy);
    }
    // The real-model adapter contract (layer count, hidden width, tokenizer
    // round-trip, residual read/write hooks) is the Backend interface; no
    // adapter ships in this build.
    throw config_error("backend.kind \"" + config.kind +
                       "\" has no adapter in this build; available: toy");
}

std::unique_ptr<pipeline::GeneratorClient> client_from_config(const ClientConfig& config) {
    if (config.mode == "replay") {
        if (config.fixture_dir.empty())
            throw config_error("replay mode needs fixture_dir");
        return std::make_unique<pipeline::ReplayClient>(
            std::make_shared<pipeline::FixtureStore>(config.fixture_dir));
    }
    pipeline::HttpClientConfig http;
    http.endpoint = config.endpoint;
    http.model = config.model;
    http.api_key_env = config.api_key_env;
    http.timeout_ms = config.timeout_ms;
    if (http.endpoint.empty()) throw config_error(config.mode + " mode needs endpoint");
    if (config.mode == "live") return std::make_unique<pipeline::HttpClient>(http);
    if (config.fixture_dir.empty())
        throw config_error("record mode needs fixture_dir");
    return std::make_unique<pipeline::RecordingClient>(
        std::make_shared<pipeline::HttpClient>(http),
        std::make_shared<pipeline::FixtureStore>(config.fixture_dir));
}

JudgeBundle judge_from_config(const JudgeConfig& config,
                              const std::function<void(const std::string&)>& transcript) {
    JudgeBundle bundle;
    if (config.kind == "oracle") {
        bundle.judge = std::make_unique<judge::OracleJudge>();
        return bundle;
    }
    bundle.client = client_from_config(config.client);
    judge::JudgePolicy policy;
    policy.max_attempts = config.max_attempts;
    bundle.judge = std::make_unique<judge::LlmJudge>(*bundle.client, policy, transcript);
    return bundle;
}

int resolve_compositional_layer(const CompositionalConfig& config,
                                const BackendConfig& backend_config) {
    if (config.layer >= 0) return config.layer;
    if (backend_config.kind == "toy") return backend::toy::kEncodingLayer;
    return 15;
}

}  // namespace taskvec
