#include "foa/batching.hpp"

#include <future>
#include <map>

namespace foa {

BatchPlan plan_batch(const std::vector<std::string>& prompts) {
  BatchPlan plan;
  std::map<std::string, std::size_t> seen;
  for (const auto& prompt : prompts) {
    auto it = seen.find(prompt);
    if (it == seen.end()) {
      seen.emplace(prompt, plan.distinct_prompts.size());
      plan.distinct_prompts.emplace_back(prompt, 1);
    } else {
      plan.distinct_prompts[it->second].second += 1;
    }
    plan.total_requested += 1;
  }
  return plan;
}

BackendResponse BatchExecutor::issue(const BackendRequest& request) {
  ++requests_issued_;
  return client_.complete(request);
}

void BatchExecutor::account(const BackendResponse& response, int t_now) {
  ledger_.record(base_request_.model, response.usage.prompt_tokens,
                 response.usage.completion_tokens);
  double total = ledger_.total_usd();
  bool over = budget_.limit_usd && total > *budget_.limit_usd;
  if (over) budget_.exhausted = true;
  if (trace_) {
    nlohmann::json payload;
    payload["model"] = base_request_.model;
    payload["prompt_tokens"] = response.usage.prompt_tokens;
    payload["completion_tokens"] = response.usage.completion_tokens;
    payload["total_usd"] = total;
    payload["exhausted"] = budget_.exhausted;
    trace_->emit(t_now, "budget", std::move(payload));
  }
}

std::vector<std::string> BatchExecutor::complete_all(const std::vector<std::string>& prompts,
                                                     int t_now) {
  if (prompts.empty()) return {};

  std::vector<BackendRequest> requests;
  std::vector<int> multiplicities;
  if (batching_enabled_) {
    BatchPlan plan = plan_batch(prompts);
    for (const auto& [prompt, count] : plan.distinct_prompts) {
      BackendRequest request = base_request_;
      request.prompt = prompt;
      request.n = count;
      requests.push_back(std::move(request));
      multiplicities.push_back(count);
    }
  } else {
    for (const auto& prompt : prompts) {
      BackendRequest request = base_request_;
      request.prompt = prompt;
      request.n = 1;
      requests.push_back(std::move(request));
      multiplicities.push_back(1);
    }
  }

  std::vector<BackendResponse> responses(requests.size());
  if (parallelism_ > 1 && requests.size() > 1) {
    std::vector<std::future<BackendResponse>> futures;
    futures.reserve(requests.size());
    std::size_t next = 0;
    while (next < requests.size()) {
      std::size_t window = std::min<std::size_t>(parallelism_, requests.size() - next);
      for (std::size_t i = 0; i < window; ++i)
        futures.push_back(std::async(std::launch::async, [this, &requests, next, i] {
          return issue(requests[next + i]);
        }));
      for (std::size_t i = 0; i < window; ++i) responses[next + i] = futures[i].get();
      futures.clear();
      next += window;
    }
  } else {
    for (std::size_t i = 0; i < requests.size(); ++i) responses[i] = issue(requests[i]);
  }
  // Usage is accounted in plan order so ledger and trace stay deterministic
  // regardless of request scheduling.
  for (const auto& response : responses) account(response, t_now);

  std::vector<std::string> outputs;
  outputs.reserve(prompts.size());
  if (batching_enabled_) {
    // Re-walk the input order, popping from each group's choice list.
    std::map<std::string, std::pair<std::size_t, std::size_t>> group;  // prompt -> (idx, used)
    for (std::size_t i = 0; i < requests.size(); ++i) group[requests[i].prompt] = {i, 0};
    for (const auto& prompt : prompts) {
      auto& [idx, used] = group[prompt];
      const auto& choices = responses[idx].choices;
      if (choices.empty()) throw BackendError("backend returned no choices");
      outputs.push_back(choices[used < choices.size() ? used : choices.size() - 1]);
      ++used;
    }
  } else {
    for (std::size_t i = 0; i < responses.size(); ++i) {
      if (responses[i].choices.empty()) throw BackendError("backend returned no choices");
      outputs.push_back(responses[i].choices[0]);
    }
  }
  return outputs;
}

std::vector<std::vector<std::string>> BatchExecutor::complete_samples(
    const std::vector<std::string>& prompts, int samples, int t_now) {
  std::vector<std::string> expanded;
  expanded.reserve(prompts.size() * samples);
  for (const auto& prompt : prompts)
    for (int s = 0; s < samples; ++s) expanded.push_back(prompt);

  std::vector<std::string> flat = complete_all(expanded, t_now);

  std::vector<std::vector<std::string>> grouped(prompts.size());
  for (std::size_t i = 0; i < prompts.size(); ++i)
    grouped[i].assign(flat.begin() + i * samples, flat.begin() + (i + 1) * samples);
  return grouped;
}

}  // namespace foa
