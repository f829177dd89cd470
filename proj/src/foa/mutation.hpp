#pragma once

#include <cstdint>

#include "foa/batching.hpp"
#include "foa/fleet.hpp"
#include "foa/history.hpp"
#include "foa/policy.hpp"
#include "foa/rng.hpp"
#include "foa/trace.hpp"

namespace foa {

struct MutationOutcome {
  FleetState fleet;
  bool early_exit = false;   // a solution state was observed mid-phase
  int pruned_count = 0;      // sudden-death replacements performed
  bool all_terminal = false; // no viable state left; coordinator fails the run
};

struct PruneOutcome {
  FleetState fleet;
  int replaced = 0;
  bool all_terminal = false;
};

// One state transition for a single agent: a successor sampled from the
// policy, never the input state (enforced mutation). nullopt when no
// viable successor exists, which marks the agent terminal for this step.
// Precondition: state is non-terminal.
std::optional<State> step_agent(const State& state, const Environment& env, Policy& policy,
                                RngStream& rng);

// Sudden death: every agent holding a terminal non-solution state is
// reassigned a state drawn uniformly from the distinct viable states in
// the fleet. With no viable state the fleet is returned unchanged and the
// all-terminal flag set.
PruneOutcome prune_terminals(const FleetState& fleet, const Environment& env, RngStream& rng);

// Extended form used by the phase: `extra_dead`, indexed by agent, marks
// slots whose policy found no successor; replacements are appended to
// `replaced_log` when given.
PruneOutcome prune_terminals(const FleetState& fleet, const Environment& env, RngStream& rng,
                             const std::vector<bool>* extra_dead, nlohmann::json* replaced_log);

// Up to k independent transitions per agent; after each inner step the
// solution check runs first, then terminal pruning. Stops early when a
// solution appears (for stop-on-first tasks), when every state is
// terminal, or when the budget flag flips.
MutationOutcome mutation_phase(const FleetState& fleet, const Environment& env, Policy& policy,
                               int k, std::uint64_t seed, StateHistory& history,
                               RunBudget& budget, TraceWriter* trace);

}  // namespace foa
