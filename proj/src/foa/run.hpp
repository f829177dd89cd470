#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "foa/cost.hpp"
#include "foa/mutation.hpp"
#include "foa/selection.hpp"
#include "foa/value_service.hpp"

namespace foa {

// Resolved settings for one run. resample_every_k == 0 disables the
// selection phase entirely; gamma == 0 restricts the candidate pool to
// current states.
struct RunSettings {
  int n_agents = 1;
  int max_steps = 1;
  int resample_every_k = 1;
  double gamma = 0.5;
  ResamplingScheme scheme;
  std::uint64_t seed = 0;
  std::optional<double> budget_usd;
  bool backtrack_known_values_only = true;
};

struct RunResult {
  bool solved = false;
  std::optional<std::string> solution;  // rendered payload when solved
  int steps_taken = 0;
  double metric = 0.0;  // 1/0 success, or best overlap for collect tasks
  std::string stop_reason;  // solved | max_steps | budget | all_terminal
  double total_usd = 0.0;
  std::int64_t value_evaluations = 0;
  std::int64_t cache_hits = 0;
  std::int64_t cache_misses = 0;
  std::uint64_t distinct_states_evaluated = 0;
  std::string trace_hash;
};

// Drives the genetic-filter loop: alternating mutation phases of k steps
// and selection phases until a solution, the step limit, budget
// exhaustion, or an all-terminal fleet. `init_payload` is embedded in the
// leading trace event so a trace is self-describing for replay.
RunResult run_fleet(const RunSettings& settings, const Environment& env, Policy& policy,
                    ValueService& values, CostLedger& ledger, RunBudget& budget,
                    StateHistory& history, TraceWriter& trace, nlohmann::json init_payload);

}  // namespace foa
