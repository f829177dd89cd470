#include "doctest.h"

#include <cmath>
#include <map>

#include "foa/game24.hpp"
#include "foa/mutation.hpp"
#include "foa/synthetic_tree.hpp"
#include "test_support.hpp"

using namespace foa;
using testsupport::make_state;

namespace {

FleetState fleet_of(std::vector<State> states, int t) {
  FleetState fleet;
  fleet.t = t;
  for (std::size_t i = 0; i < states.size(); ++i)
    fleet.agents.push_back(AgentState{states[i], static_cast<int>(i), t});
  return fleet;
}

}  // namespace

TEST_CASE("step_agent enforces mutation and follows the seeded stream") {
  Game24Env env("4 4 6 8");
  SoftmaxPolicy policy;
  auto state = env.initial_state();
  RngStream a = RngStream::for_agent(11, 0, 0);
  RngStream b = RngStream::for_agent(11, 0, 0);
  auto pa = step_agent(state, env, policy, a);
  auto pb = step_agent(state, env, policy, b);
  REQUIRE(pa.has_value());
  CHECK((*pa)->key() == (*pb)->key());
  CHECK((*pa)->key() != state->key());
}

TEST_CASE("prune replaces a terminal agent uniformly among viable peers") {
  Game24Env env("1 2 3 4");
  auto viable_a = make_state({1, 2, 3, 4});
  auto viable_c = make_state({5, 5, 5, 9});
  auto dead = make_state({23});

  std::map<std::string, int> tally;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    RngStream rng(9000 + i);
    auto fleet = fleet_of({viable_a, dead, viable_c}, 1);
    auto outcome = prune_terminals(fleet, env, rng);
    REQUIRE(outcome.replaced == 1);
    REQUIRE_FALSE(outcome.all_terminal);
    tally[outcome.fleet.agents[1].payload->key()]++;
  }
  // empirical frequencies within 1% of the uniform 0.5 / 0.5
  CHECK(std::abs(tally[viable_a->key()] / double(trials) - 0.5) < 0.01);
  CHECK(std::abs(tally[viable_c->key()] / double(trials) - 0.5) < 0.01);
}

TEST_CASE("a fleet with no terminals is returned unchanged") {
  Game24Env env("1 2 3 4");
  auto a = make_state({1, 2, 3, 4});
  auto b = make_state({5, 5, 5, 9});
  RngStream rng(4);
  auto fleet = fleet_of({a, b}, 2);
  auto outcome = prune_terminals(fleet, env, rng);
  CHECK(outcome.replaced == 0);
  CHECK(outcome.fleet.agents[0].payload->key() == a->key());
  CHECK(outcome.fleet.agents[1].payload->key() == b->key());
}

TEST_CASE("all-terminal fleets set the flag instead of replacing") {
  Game24Env env("1 2 3 4");
  auto dead1 = make_state({23});
  auto dead2 = make_state({7});
  RngStream rng(4);
  auto outcome = prune_terminals(fleet_of({dead1, dead2}, 1), env, rng);
  CHECK(outcome.all_terminal);
  CHECK(outcome.replaced == 0);
  CHECK(outcome.fleet.agents[0].payload->key() == dead1->key());
}

TEST_CASE("uniform replacement draws over distinct viable states") {
  Game24Env env("1 2 3 4");
  auto viable = make_state({1, 2, 3, 4});
  auto dead = make_state({23});
  // the same viable payload occupies two slots; it is one element of G
  std::map<std::string, int> tally;
  for (int i = 0; i < 1000; ++i) {
    RngStream rng(100 + i);
    auto outcome = prune_terminals(fleet_of({viable, viable, dead}, 1), env, rng);
    REQUIRE(outcome.replaced == 1);
    tally[outcome.fleet.agents[2].payload->key()]++;
  }
  CHECK(tally.size() == 1);
  CHECK(tally[viable->key()] == 1000);
}

TEST_CASE("sudden-death soundness: no terminal survives while a viable peer exists") {
  SyntheticTreeEnv env(21, 3, 2, 0.0);
  StateHistory history;
  RunBudget budget;
  SoftmaxPolicy policy;
  auto fleet = initialize_fleet(6, env.initial_state());
  // step to depth 2: leaves appear, most are terminal
  auto outcome = mutation_phase(fleet, env, policy, 2, 77, history, budget, nullptr);
  if (!outcome.early_exit && !outcome.all_terminal) {
    for (const auto& agent : outcome.fleet.agents) {
      bool dead = env.is_terminal(agent.payload) && !env.is_solution(agent.payload);
      CHECK_FALSE(dead);
    }
  }
}

TEST_CASE("mutation advances t by k when nothing terminates") {
  Game24Env env("4 4 6 8");
  SoftmaxPolicy policy;
  StateHistory history;
  RunBudget budget;
  auto fleet = initialize_fleet(3, env.initial_state());
  auto outcome = mutation_phase(fleet, env, policy, 3, 5, history, budget, nullptr);
  CHECK(outcome.fleet.t == 3);
  CHECK(outcome.pruned_count >= 0);
  // enforced mutation held at every step: all agents now hold 1 number
  for (const auto& agent : outcome.fleet.agents) {
    // three steps consume three pairs: 4 -> 1 numbers
    if (!outcome.early_exit)
      CHECK(static_cast<const Game24State&>(*agent.payload).remaining.size() == 1);
  }
}

TEST_CASE("solution check precedes pruning inside a step") {
  // fleet at t=0 with two 2-number states: one solves on its only sensible
  // move, the other dead-ends; the early exit must skip the prune.
  Game24Env env("10 14");
  EnumeratorPolicy policy;  // first move of {10, 14} is 10+14=24
  StateHistory history;
  RunBudget budget;
  std::ostringstream sink;
  TraceWriter trace(&sink);
  auto solver = make_state({10, 14});
  auto fleet = fleet_of({solver}, 0);
  auto outcome = mutation_phase(fleet, env, policy, 1, 5, history, budget, &trace);
  CHECK(outcome.early_exit);
  CHECK(outcome.pruned_count == 0);
  // the trace records the solution check and no prune event after it
  CHECK(sink.str().find("solution_check") != std::string::npos);
  CHECK(sink.str().find("\"prune\"") == std::string::npos);
}

TEST_CASE("an agent whose successors are all terminal lands terminal then is resampled") {
  SyntheticTreeEnv env(6, 2, 1, 0.0);
  // depth-1 tree: one child is the unique solution, the other terminal.
  // Use a hinted argmax policy forced AWAY from the solution for agent 0 by
  // inverting the oracle.
  ValueHint inverted = [](const Environment& e, const State& s) {
    return -static_cast<const SyntheticTreeEnv&>(e).oracle_value(s);
  };
  SoftmaxPolicy policy(inverted, 1e-9);
  StateHistory history;
  RunBudget budget;
  auto fleet = initialize_fleet(2, env.initial_state());
  auto outcome = mutation_phase(fleet, env, policy, 1, 5, history, budget, nullptr);
  // both agents chose the terminal leaf: no viable peers -> all_terminal
  CHECK(outcome.all_terminal);
}

TEST_CASE("mutation requires k >= 1") {
  Game24Env env("4 4 6 8");
  SoftmaxPolicy policy;
  StateHistory history;
  RunBudget budget;
  auto fleet = initialize_fleet(1, env.initial_state());
  CHECK_THROWS(mutation_phase(fleet, env, policy, 0, 5, history, budget, nullptr));
}
