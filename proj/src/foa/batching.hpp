#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foa/backend.hpp"
#include "foa/cost.hpp"
#include "foa/trace.hpp"

namespace foa {

// Grouping of identical prompt strings: one backend request per distinct
// prompt with n_outputs equal to its multiplicity.
struct BatchPlan {
  std::vector<std::pair<std::string, int>> distinct_prompts;  // in first-appearance order
  int total_requested = 0;
};

BatchPlan plan_batch(const std::vector<std::string>& prompts);

// Tracks the run's spend against an optional ceiling. The ceiling is
// checked after each backend call batch, never mid-call, because a call's
// cost is only known from its response.
struct RunBudget {
  std::optional<double> limit_usd;
  bool exhausted = false;
};

// Executes a list of prompts against the completion backend, grouping
// duplicates into multi-output requests when batching is enabled. Records
// token usage into the ledger, emits one `budget` trace event per backend
// call, and flips the budget flag once the ceiling is crossed.
class BatchExecutor {
 public:
  BatchExecutor(CompletionClient& client, BackendRequest base_request, CostLedger& ledger,
                RunBudget& budget, TraceWriter* trace, bool batching_enabled, int parallelism = 1)
      : client_(client),
        base_request_(std::move(base_request)),
        ledger_(ledger),
        budget_(budget),
        trace_(trace),
        batching_enabled_(batching_enabled),
        parallelism_(parallelism) {}

  // Returns one output per input prompt, aligned with the input order.
  // Outputs for a grouped request are distributed to its positions in
  // first-appearance order.
  std::vector<std::string> complete_all(const std::vector<std::string>& prompts, int t_now);

  // Multi-sample form: `samples` outputs per distinct prompt.
  std::vector<std::vector<std::string>> complete_samples(const std::vector<std::string>& prompts,
                                                         int samples, int t_now);

  std::int64_t requests_issued() const { return requests_issued_; }

 private:
  BackendResponse issue(const BackendRequest& request);
  void account(const BackendResponse& response, int t_now);

  CompletionClient& client_;
  BackendRequest base_request_;
  CostLedger& ledger_;
  RunBudget& budget_;
  TraceWriter* trace_;
  bool batching_enabled_;
  int parallelism_;
  std::int64_t requests_issued_ = 0;
};

}  // namespace foa
