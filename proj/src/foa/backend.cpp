#include "foa/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "foa/rng.hpp"

namespace foa {

nlohmann::json request_to_json(const BackendRequest& request) {
  nlohmann::json j;
  j["model"] = request.model;
  j["prompt"] = request.prompt;
  j["n"] = request.n;
  j["max_tokens"] = request.max_tokens;
  j["temperature"] = request.temperature;
  j["top_p"] = request.top_p;
  if (request.stop)
    j["stop"] = *request.stop;
  else
    j["stop"] = nullptr;
  return j;
}

std::string request_key(const BackendRequest& request) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0')
      << fnv1a64(request_to_json(request).dump());
  return out.str();
}

HttpCompletionClient::HttpCompletionClient(std::string base_url, std::string path,
                                           std::string api_key_env)
    : base_url_(std::move(base_url)), path_(std::move(path)) {
  if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

BackendResponse HttpCompletionClient::complete(const BackendRequest& request) {
  httplib::Client client(base_url_);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto res = client.Post(path_, headers, request_to_json(request).dump(), "application/json");
  if (!res) throw BackendError("backend unreachable: " + base_url_);
  if (res->status < 200 || res->status >= 300)
    throw BackendError("backend returned HTTP " + std::to_string(res->status));

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("backend returned invalid JSON: ") + e.what());
  }

  BackendResponse response;
  if (!body.contains("choices") || !body["choices"].is_array())
    throw BackendError("backend response missing choices");
  for (const auto& choice : body["choices"]) {
    if (choice.is_string())
      response.choices.push_back(choice.get<std::string>());
    else if (choice.contains("text"))
      response.choices.push_back(choice["text"].get<std::string>());
    else
      throw BackendError("backend choice has no text");
  }
  if (body.contains("usage")) {
    response.usage.prompt_tokens = body["usage"].value("prompt_tokens", 0);
    response.usage.completion_tokens = body["usage"].value("completion_tokens", 0);
  }
  return response;
}

FixtureCompletionClient FixtureCompletionClient::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BackendError("cannot open fixture file: " + path);
  nlohmann::json fixture;
  try {
    in >> fixture;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError("malformed fixture file " + path + ": " + e.what());
  }
  return FixtureCompletionClient(std::move(fixture));
}

FixtureCompletionClient::FixtureCompletionClient(nlohmann::json fixture)
    : fixture_(std::move(fixture)) {}

BackendResponse FixtureCompletionClient::complete(const BackendRequest& request) {
  std::string key = request_key(request);
  auto it = fixture_.find(key);
  if (it == fixture_.end())
    throw BackendError("no fixture entry for request " + key + " (prompt head: " +
                       request.prompt.substr(0, 40) + "...)");
  const auto& entries = *it;
  if (!entries.is_array() || entries.empty())
    throw BackendError("fixture entry for " + key + " is not a non-empty array");
  std::size_t& pos = cursor_[key];
  const auto& entry = entries[pos < entries.size() ? pos : entries.size() - 1];
  ++pos;

  BackendResponse response;
  for (const auto& choice : entry.at("choices"))
    response.choices.push_back(choice.get<std::string>());
  if (entry.contains("usage")) {
    response.usage.prompt_tokens = entry["usage"].value("prompt_tokens", 0);
    response.usage.completion_tokens = entry["usage"].value("completion_tokens", 0);
  }
  return response;
}

nlohmann::json FixtureCompletionClient::make_entry(const std::vector<std::string>& choices,
                                                   std::int64_t prompt_tokens,
                                                   std::int64_t completion_tokens) {
  nlohmann::json entry;
  entry["choices"] = choices;
  entry["usage"] = {{"prompt_tokens", prompt_tokens}, {"completion_tokens", completion_tokens}};
  return entry;
}

BackendResponse RecordingClient::complete(const BackendRequest& request) {
  BackendResponse response = inner_->complete(request);
  std::string key = request_key(request);
  if (!fixture_.contains(key)) fixture_[key] = nlohmann::json::array();
  fixture_[key].push_back(FixtureCompletionClient::make_entry(
      response.choices, response.usage.prompt_tokens, response.usage.completion_tokens));
  return response;
}

void RecordingClient::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw BackendError("cannot write fixture file: " + path);
  out << fixture_.dump(2) << "\n";
}

BackendResponse RetryingClient::complete(const BackendRequest& request) {
  int attempts = 0;
  for (;;) {
    try {
      return inner_->complete(request);
    } catch (const BackendError&) {
      if (++attempts > max_retries_) throw;
      if (backoff_ms_ > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms_ * attempts));
    }
  }
}

}  // namespace foa
