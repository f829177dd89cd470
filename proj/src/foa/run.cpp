#include "foa/run.hpp"

#include <algorithm>
#include <stdexcept>

namespace foa {

RunResult run_fleet(const RunSettings& settings, const Environment& env, Policy& policy,
                    ValueService& values, CostLedger& ledger, RunBudget& budget,
                    StateHistory& history, TraceWriter& trace, nlohmann::json init_payload) {
  if (settings.max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");
  if (settings.gamma < 0.0 || settings.gamma > 1.0)
    throw std::invalid_argument("gamma must lie in [0, 1]");

  RunResult result;
  FleetState fleet = initialize_fleet(settings.n_agents, env.initial_state());
  history.record_visit(fleet.agents[0].payload, 0);
  trace.emit(0, "init", std::move(init_payload));

  SelectionConfig selection_config{settings.scheme, settings.gamma,
                                   settings.backtrack_known_values_only};
  std::optional<AgentState> solution;
  std::string reason;

  while (fleet.t < settings.max_steps && reason.empty()) {
    int remaining = settings.max_steps - fleet.t;
    int phase_steps =
        settings.resample_every_k > 0 ? std::min(settings.resample_every_k, remaining) : remaining;

    auto outcome = mutation_phase(fleet, env, policy, phase_steps, settings.seed, history,
                                  budget, &trace);
    fleet = std::move(outcome.fleet);

    if (outcome.early_exit) {
      solution = check_solution(fleet, env);
      reason = "solved";
      break;
    }
    if (outcome.all_terminal) {
      reason = "all_terminal";
      break;
    }
    if (budget.exhausted) {
      reason = "budget";
      break;
    }
    if (fleet.t >= settings.max_steps) break;  // no trailing selection

    if (settings.resample_every_k > 0) {
      auto next = selection_phase(fleet, env, values, history, selection_config, settings.seed,
                                  &trace);
      if (!next) {
        reason = "all_terminal";
        break;
      }
      fleet = std::move(*next);
      if (budget.exhausted) {
        reason = "budget";
        break;
      }
    }
  }
  if (reason.empty()) reason = "max_steps";

  // Tasks without stop-on-first semantics are scored by the best state
  // observed anywhere in the run.
  double metric = 0.0;
  if (solution) {
    metric = 1.0;
  } else if (!env.stop_on_first_solution()) {
    for (const auto& entry : history.entries())
      metric = std::max(metric, env.progress_score(entry.state));
  }

  result.solved = solution.has_value();
  if (solution) result.solution = env.solution_payload(solution->payload);
  result.steps_taken = fleet.t;
  result.metric = metric;
  result.stop_reason = reason;
  result.total_usd = ledger.total_usd();
  result.value_evaluations = values.evaluations();
  result.cache_hits = values.cache_hits();
  result.cache_misses = values.cache_misses();
  result.distinct_states_evaluated = values.cache_size();

  nlohmann::json done;
  done["solved"] = result.solved;
  done["steps_taken"] = result.steps_taken;
  done["reason"] = reason;
  done["metric"] = metric;
  done["total_usd"] = result.total_usd;
  if (result.solution) done["solution"] = *result.solution;
  trace.emit(fleet.t, "done", std::move(done));
  result.trace_hash = trace.hash_hex();
  return result;
}

}  // namespace foa
