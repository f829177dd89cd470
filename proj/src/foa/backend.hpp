#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace foa {

// One completion request. Generation parameters default per task from the
// runtime configuration; `n` asks for that many outputs in a single call.
struct BackendRequest {
  std::string model;
  std::string prompt;
  int n = 1;
  int max_tokens = 100;
  double temperature = 0.7;
  double top_p = 1.0;
  std::optional<std::string> stop;
};

struct BackendUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct BackendResponse {
  std::vector<std::string> choices;
  BackendUsage usage;
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Throws BackendError on transport or protocol failure.
  virtual BackendResponse complete(const BackendRequest& request) = 0;
};

nlohmann::json request_to_json(const BackendRequest& request);

// Canonical lookup key for recorded fixtures: hex FNV-1a of the request's
// canonical JSON form.
std::string request_key(const BackendRequest& request);

// JSON-over-HTTP client compatible in shape with common completion APIs:
// request {model, prompt, n, max_tokens, temperature, top_p, stop},
// response {choices: [{text} | text...], usage: {prompt_tokens,
// completion_tokens}}. The API key is read from an environment variable.
class HttpCompletionClient : public CompletionClient {
 public:
  HttpCompletionClient(std::string base_url, std::string path, std::string api_key_env);
  BackendResponse complete(const BackendRequest& request) override;

 private:
  std::string base_url_;
  std::string path_;
  std::string api_key_;
};

// Offline client replaying recorded responses. The fixture file maps
// request_key -> list of responses, consumed in order; repeated identical
// requests pop successive entries (the last entry is sticky).
class FixtureCompletionClient : public CompletionClient {
 public:
  static FixtureCompletionClient from_file(const std::string& path);
  explicit FixtureCompletionClient(nlohmann::json fixture);

  BackendResponse complete(const BackendRequest& request) override;

  // Builds a fixture entry for tests and recorders.
  static nlohmann::json make_entry(const std::vector<std::string>& choices,
                                   std::int64_t prompt_tokens, std::int64_t completion_tokens);

 private:
  nlohmann::json fixture_;
  std::map<std::string, std::size_t> cursor_;
};

// Tees every exchange into a fixture document so a live run can later be
// replayed offline through FixtureCompletionClient.
class RecordingClient : public CompletionClient {
 public:
  explicit RecordingClient(std::shared_ptr<CompletionClient> inner) : inner_(std::move(inner)) {
    fixture_ = nlohmann::json::object();
  }

  BackendResponse complete(const BackendRequest& request) override;

  const nlohmann::json& fixture() const { return fixture_; }
  void save(const std::string& path) const;

 private:
  std::shared_ptr<CompletionClient> inner_;
  nlohmann::json fixture_;
};

// Retries the wrapped client on BackendError with linear backoff, then
// propagates the final failure.
class RetryingClient : public CompletionClient {
 public:
  RetryingClient(std::shared_ptr<CompletionClient> inner, int max_retries, int backoff_ms = 0)
      : inner_(std::move(inner)), max_retries_(max_retries), backoff_ms_(backoff_ms) {}

  BackendResponse complete(const BackendRequest& request) override;

 private:
  std::shared_ptr<CompletionClient> inner_;
  int max_retries_;
  int backoff_ms_;
};

}  // namespace foa
