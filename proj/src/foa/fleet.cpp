#include "foa/fleet.hpp"

#include <stdexcept>

namespace foa {

FleetState initialize_fleet(int n, const State& initial_state) {
  if (n < 1) throw std::invalid_argument("fleet size must be >= 1");
  FleetState fleet;
  fleet.t = 0;
  fleet.agents.reserve(n);
  for (int i = 0; i < n; ++i) fleet.agents.push_back(AgentState{initial_state, i, 0});
  return fleet;
}

std::optional<AgentState> check_solution(const FleetState& fleet, const Environment& env) {
  for (const auto& agent : fleet.agents) {
    if (env.is_solution(agent.payload)) return agent;
  }
  return std::nullopt;
}

}  // namespace foa
