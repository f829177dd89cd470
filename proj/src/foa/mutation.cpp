#include "foa/mutation.hpp"

#include <stdexcept>
#include <unordered_set>

namespace foa {
namespace {

constexpr std::uint64_t kPruneTag = 0x7072756e;  // stream tag for sudden death

}  // namespace

std::optional<State> step_agent(const State& state, const Environment& env, Policy& policy,
                                RngStream& rng) {
  auto proposal = policy.propose(env, state, rng);
  if (!proposal) return std::nullopt;
  if ((*proposal)->key() == state->key())
    throw std::logic_error("policy proposed a stationary move");
  return proposal;
}

PruneOutcome prune_terminals(const FleetState& fleet, const Environment& env, RngStream& rng,
                             const std::vector<bool>* extra_dead, nlohmann::json* replaced_log) {
  PruneOutcome outcome;
  outcome.fleet = fleet;

  auto is_dead = [&](const AgentState& agent) {
    if (extra_dead && (*extra_dead)[agent.agent_index]) return true;
    return env.is_terminal(agent.payload) && !env.is_solution(agent.payload);
  };

  // B: agents in terminal non-solution states. G: distinct viable states.
  std::vector<int> doomed;
  std::vector<State> viable;
  std::unordered_set<std::string> viable_keys;
  for (const auto& agent : fleet.agents) {
    if (is_dead(agent)) {
      doomed.push_back(agent.agent_index);
    } else if (viable_keys.insert(agent.payload->key()).second) {
      viable.push_back(agent.payload);
    }
  }
  if (doomed.empty()) return outcome;
  if (viable.empty()) {
    outcome.all_terminal = true;
    return outcome;
  }
  for (int index : doomed) {
    auto& agent = outcome.fleet.agents[index];
    std::string from = agent.payload->key();
    agent.payload = viable[rng.next_index(viable.size())];
    agent.born_at = fleet.t;
    ++outcome.replaced;
    if (replaced_log)
      replaced_log->push_back(
          {{"agent", index}, {"from", from}, {"to", agent.payload->key()}});
  }
  return outcome;
}

PruneOutcome prune_terminals(const FleetState& fleet, const Environment& env, RngStream& rng) {
  return prune_terminals(fleet, env, rng, nullptr, nullptr);
}

MutationOutcome mutation_phase(const FleetState& fleet, const Environment& env, Policy& policy,
                               int k, std::uint64_t seed, StateHistory& history,
                               RunBudget& budget, TraceWriter* trace) {
  if (k < 1) throw std::invalid_argument("mutation phase requires k >= 1");

  MutationOutcome outcome;
  outcome.fleet = fleet;

  for (int inner = 0; inner < k; ++inner) {
    int t_before = outcome.fleet.t;
    int t_after = t_before + 1;

    // Each agent independently mutates its state. Agents already terminal
    // (possible only when a previous prune found no viable peer) stay put.
    std::vector<State> inputs;
    std::vector<RngStream> streams;
    std::vector<int> movers;
    for (const auto& agent : outcome.fleet.agents) {
      if (env.is_terminal(agent.payload)) continue;
      movers.push_back(agent.agent_index);
      inputs.push_back(agent.payload);
      streams.push_back(RngStream::for_agent(seed, agent.agent_index, t_before));
    }
    auto proposals = policy.propose_batch(env, inputs, streams, t_after);

    nlohmann::json step_moves = nlohmann::json::array();
    std::vector<bool> stuck(outcome.fleet.agents.size(), false);
    for (std::size_t m = 0; m < movers.size(); ++m) {
      auto& agent = outcome.fleet.agents[movers[m]];
      nlohmann::json move;
      move["agent"] = agent.agent_index;
      move["from"] = agent.payload->key();
      if (proposals[m]) {
        if ((*proposals[m])->key() == agent.payload->key())
          throw std::logic_error("policy proposed a stationary move");
        agent.payload = *proposals[m];
        agent.born_at = t_after;
        history.record_visit(agent.payload, t_after);
        move["to"] = agent.payload->key();
      } else {
        // No viable successor: the slot is treated as terminal this step.
        stuck[agent.agent_index] = true;
        move["to"] = nullptr;
      }
      step_moves.push_back(std::move(move));
    }
    outcome.fleet.t = t_after;
    if (trace) trace->emit(t_after, "step", {{"agents", std::move(step_moves)}});

    // Solution check, then pruning, in that order.
    auto solution = check_solution(outcome.fleet, env);
    if (trace) {
      nlohmann::json payload;
      payload["found"] = solution.has_value();
      if (solution) payload["agent"] = solution->agent_index;
      trace->emit(t_after, "solution_check", std::move(payload));
    }
    if (solution && env.stop_on_first_solution()) {
      outcome.early_exit = true;
      return outcome;
    }

    RngStream prune_rng = RngStream::for_phase(seed, t_after, kPruneTag);
    nlohmann::json replaced = nlohmann::json::array();
    auto pruned = prune_terminals(outcome.fleet, env, prune_rng, &stuck, &replaced);
    if (pruned.all_terminal) {
      outcome.all_terminal = true;
      if (trace)
        trace->emit(t_after, "prune",
                    {{"replaced", nlohmann::json::array()}, {"all_terminal", true}});
      return outcome;
    }
    if (pruned.replaced > 0) {
      outcome.fleet = std::move(pruned.fleet);
      outcome.pruned_count += pruned.replaced;
      if (trace)
        trace->emit(t_after, "prune", {{"replaced", std::move(replaced)}, {"all_terminal", false}});
    }

    if (budget.exhausted) return outcome;
  }
  return outcome;
}

}  // namespace foa
