#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace taskvec::pipeline {

struct CompletionRequest {
    std::string system;  // may be empty
    std::string user;
};

// One text-completion surface shared by the pair generator and the judge.
// Implementations must be safe to call from several worker threads.
class GeneratorClient {
public:
    virtual ~GeneratorClient() = default;

    // Returns the raw reply text. Transport problems throw transport_error.
    virtual std::string complete(const CompletionRequest& request) = 0;

    // Short label recorded into produced records (model name, "scripted",
    // "replay:<dir>").
    virtual std::string label() const = 0;
};

// Canned replies in order; used by unit tests and judge-retry fixtures.
// `complete` pops the front; an empty queue throws transport_error.
class ScriptedClient : public GeneratorClient {
public:
    explicit ScriptedClient(std::vector<std::string> replies, std::string label = "scripted");
    std::string complete(const CompletionRequest& request) override;
    std::string label() const override;
    // Requests seen so far, in call order.
    std::vector<CompletionRequest> calls() const;

private:
    mutable std::mutex mu_;
    std::deque<std::string> replies_;
    std::string label_;
    std::vector<CompletionRequest> calls_;
};

// Prompt-keyed reply store under one directory: <key>.txt per reply plus an
// index.jsonl line per entry. The key is the content hash of system + user.
class FixtureStore {
public:
    explicit FixtureStore(std::string dir);

    static std::string key_for(const CompletionRequest& request);
    bool contains(const CompletionRequest& request) const;
    std::string fetch(const CompletionRequest& request) const;  // throws transport_error on miss
    void store(const CompletionRequest& request, const std::string& reply);
    const std::string& dir() const { return dir_; }

private:
    std::string path_for(const std::string& key) const;
    std::string dir_;
    mutable std::mutex mu_;
};

// Serves exclusively from a fixture store; a miss is a hard error so a replay
// run can never silently go live.
class ReplayClient : public GeneratorClient {
public:
    explicit ReplayClient(std::shared_ptr<FixtureStore> store);
    std::string complete(const CompletionRequest& request) override;
    std::string label() const override;

private:
    std::shared_ptr<FixtureStore> store_;
};

// Passes through to an inner client and records every exchange, so a live run
// becomes tomorrow's replay fixture.
class RecordingClient : public GeneratorClient {
public:
    RecordingClient(std::shared_ptr<GeneratorClient> inner, std::shared_ptr<FixtureStore> store);
    std::string complete(const CompletionRequest& request) override;
    std::string label() const override;

private:
    std::shared_ptr<GeneratorClient> inner_;
    std::shared_ptr<FixtureStore> store_;
};

struct HttpClientConfig {
    std::string endpoint;     // e.g. "https://host:443/v1/chat/completions"
    std::string model;
    std::string api_key_env = "TASKVEC_API_KEY";  // secret comes from the environment only
    int timeout_ms = 30000;
};

// Minimal chat-completions client over the configured endpoint.
class HttpClient : public GeneratorClient {
public:
    explicit HttpClient(HttpClientConfig config);
    std::string complete(const CompletionRequest& request) override;
    std::string label() const override;

private:
    HttpClientConfig config_;
};

// Retry wrapper: up to `attempts` tries with exponential backoff on
// transport_error. The sleeper is injectable so tests run without waiting.
struct RetryPolicy {
    int attempts = 3;
    int base_delay_ms = 250;
    std::function<void(int /*ms*/)> sleeper;  // default: std::this_thread::sleep_for
};

std::string complete_with_retries(GeneratorClient& client, const CompletionRequest& request,
                                  const RetryPolicy& policy);

}  // namespace taskvec::pipeline
