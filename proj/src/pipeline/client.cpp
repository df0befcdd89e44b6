#include "taskvec/pipeline/client.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"

namespace taskvec::pipeline {

namespace fs = std::filesystem;

ScriptedClient::ScriptedClient(std::vector<std::string> replies, std::string label)
    : replies_(replies.begin(), replies.end()), label_(std::move(label)) {}

std::string ScriptedClient::complete(const CompletionRequest& request) {
    std::lock_guard<std::mutex> lock(mu_);
    calls_.push_back(request);
    if (replies_.empty()) throw transport_error("scripted client ran out of replies");
    std::string reply = std::move(replies_.front());
    replies_.pop_front();
    return reply;
}

std::string ScriptedClient::label() const { return label_; }

std::vector<CompletionRequest> ScriptedClient::calls() const {
    std::lock_guard<std::mutex> lock(mu_);
    return calls_;
}

FixtureStore::FixtureStore(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::string FixtureStore::key_for(const CompletionRequest& request) {
    // 0x1f keeps "system+user" splits from colliding.
    return content_hash(request.system + '\x1f' + request.user);
}

std::string FixtureStore::path_for(const std::string& key) const {
    return (fs::path(dir_) / (key + ".txt")).string();
}

bool FixtureStore::contains(const CompletionRequest& request) const {
    std::lock_guard<std::mutex> lock(mu_);
    return fs::exists(path_for(key_for(request)));
}

std::string FixtureStore::fetch(const CompletionRequest& request) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::string path = path_for(key_for(request));
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw transport_error("no fixture for prompt key " + key_for(request) + " under " + dir_);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void FixtureStore::store(const CompletionRequest& request, const std::string& reply) {
    std::lock_guard<std::mutex> lock(mu_);
    std::string key = key_for(request);
    {
        std::ofstream f(path_for(key), std::ios::binary);
        if (!f) throw error("cannot write fixture file under " + dir_);
        f << reply;
    }
    nlohmann::ordered_json line;
    line["key"] = key;
    line["system_bytes"] = request.system.size();
    line["user_preview"] = request.user.substr(0, 80);
    std::ofstream idx((fs::path(dir_) / "index.jsonl").string(), std::ios::app | std::ios::binary);
    idx << line.dump() << "\n";
}

ReplayClient::ReplayClient(std::shared_ptr<FixtureStore> store) : store_(std::move(store)) {}

std::string ReplayClient::complete(const CompletionRequest& request) {
    return store_->fetch(request);
}

std::string ReplayClient::label() const { return "replay:" + store_->dir(); }

RecordingClient::RecordingClient(std::shared_ptr<GeneratorClient> inner,
                                 std::shared_ptr<FixtureStore> store)
    : inner_(std::move(inner)), store_(std::move(store)) {}

std::string RecordingClient::complete(const CompletionRequest& request) {
    std::string reply = inner_->complete(request);
    store_->store(request, reply);
    return reply;
}

std::string RecordingClient::label() const { return inner_->label(); }

HttpClient::HttpClient(HttpClientConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty())
        throw config_error("live client requires a non-empty endpoint");
}

std::string HttpClient::label() const { return config_.model; }

std::string HttpClient::complete(const CompletionRequest& request) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
        throw config_error("live client needs an API key in $" + config_.api_key_env);

    // Split the endpoint into origin and path for httplib.
    std::string origin = config_.endpoint;
    std::string path = "/";
    size_t scheme = origin.find("://");
    size_t slash = scheme == std::string::npos ? origin.find('/')
                                               : origin.find('/', scheme + 3);
    if (slash != std::string::npos) {
        path = origin.substr(slash);
        origin = origin.substr(0, slash);
    }

    nlohmann::json body;
    body["model"] = config_.model;
    auto messages = nlohmann::json::array();
    if (!request.system.empty())
        messages.push_back({{"role", "system"}, {"content", request.system}});
    messages.push_back({{"role", "user"}, {"content", request.user}});
    body["messages"] = messages;

    httplib::Client http(origin);
    http.set_connection_timeout(0, config_.timeout_ms * 1000);
    http.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
    httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};

    auto res = http.Post(path, headers, body.dump(), "application/json");
    if (!res)
        throw transport_error("request to " + origin + " failed: " +
                              httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw transport_error("endpoint returned HTTP " + std::to_string(res->status) + ": " +
                              res->body.substr(0, 200));

    try {
        auto parsed = nlohmann::json::parse(res->body);
        return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw transport_error(std::string("malformed completion payload: ") + e.what());
    }
}

std::string complete_with_retries(GeneratorClient& client, const CompletionRequest& request,
                                  const RetryPolicy& policy) {
    auto sleep_ms = policy.sleeper
                        ? policy.sleeper
                        : [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
    int attempts = policy.attempts < 1 ? 1 : policy.attempts;
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) sleep_ms(policy.base_delay_ms * (1 << (attempt - 1)));
        try {
            return client.complete(request);
        } catch (const transport_error& e) {
            last_error = e.what();
        }
    }
    throw transport_error("gave up after " + std::to_string(attempts) +
                          " attempts; last error: " + last_error);
}

}  // namespace taskvec::pipeline
