#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "foa/env.hpp"

namespace foa {

// One fleet slot: an environment state plus the identity of the agent
// currently occupying it.
struct AgentState {
  State payload;
  int agent_index = 0;
  int born_at = 0;  // timestep at which the agent acquired this state
};

// The ordered collection of n agent states at a timestep. Resampling is
// with replacement and preserves n; t never decreases.
struct FleetState {
  std::vector<AgentState> agents;
  int t = 0;

  int n() const { return static_cast<int>(agents.size()); }
};

// Fleet of n copies of the initial state at t=0. Throws
// std::invalid_argument for n < 1.
FleetState initialize_fleet(int n, const State& initial_state);

// First (lowest agent_index) state satisfying the solution predicate.
std::optional<AgentState> check_solution(const FleetState& fleet, const Environment& env);

}  // namespace foa
